"""Regenerate the PDF fixtures in this directory (requires reportlab)."""
import hashlib
import json
from pathlib import Path

from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.lib import pdfencrypt
from reportlab.pdfgen import canvas
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer

HERE = Path(__file__).resolve().parent

PARAGRAPHS = [
    "The river ran past the old mill. Children played on its banks every summer.",
    "In winter the water froze solid. People walked across the ice to the village.",
]


def fixed(c):
    # deterministic output: no timestamps or random ids
    c.setCreator("thoth fixtures")
    c.setProducer("thoth fixtures")


def hello():
    c = canvas.Canvas(str(HERE / "hello.pdf"), pagesize=letter, invariant=1)
    fixed(c)
    c.drawString(72, 700, "Hello world")
    c.save()


def two_paragraphs():
    doc = SimpleDocTemplate(str(HERE / "two_paragraphs.pdf"), pagesize=letter, invariant=1)
    styles = getSampleStyleSheet()
    story = []
    for p in PARAGRAPHS:
        story.append(Paragraph(p, styles["Normal"]))
        story.append(Spacer(1, 24))
    doc.build(story)


def image_only():
    c = canvas.Canvas(str(HERE / "image_only.pdf"), pagesize=letter, invariant=1)
    fixed(c)
    c.setFillColorRGB(0.2, 0.3, 0.8)
    c.rect(72, 500, 300, 200, fill=1)
    c.circle(300, 300, 50, fill=1)
    c.save()


def encrypted():
    enc = pdfencrypt.StandardEncryption("secret", canPrint=0)
    c = canvas.Canvas(str(HERE / "encrypted.pdf"), pagesize=letter, invariant=1, encrypt=enc)
    fixed(c)
    c.drawString(72, 700, "Top secret words")
    c.save()


if __name__ == "__main__":
    hello()
    two_paragraphs()
    image_only()
    encrypted()
    (HERE / "corrupt.pdf").write_bytes(b"%PDX-1.4\n" + b"\x00\x13garbage" * 8)
    # document ids are the SHA-256 of the text the PDFs were built from
    texts = {"hello.pdf": "Hello world", "two_paragraphs.pdf": "\n\n".join(PARAGRAPHS)}
    ids = {name: {"text": t, "id": hashlib.sha256(t.encode()).hexdigest()} for name, t in texts.items()}
    (HERE / "expected_ids.json").write_text(json.dumps(ids, indent=1) + "\n")
