"""Bundled fixture corpus."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent


def corpus_path() -> Path:
    return DATA_DIR / "corpus" / "corpus.jsonl"
