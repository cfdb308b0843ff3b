"""Bundled paradigm files and a loader for them."""
from __future__ import annotations

from importlib import resources

from ..paradigm import ParadigmFile, parse_text

FIXTURES = (
    "english_weak_verb",
    "german_present",
    "german_full",
    "latin_adjectives",
    "russian_class_one",
    "nuer_classes",
    "german_plurals",
    "spanish_verbs",
    "latin_deponent",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"no bundled fixture named {name!r}")
    return (resources.files(__package__) / f"{name}.par").read_text(encoding="utf-8")


def load(name: str) -> ParadigmFile:
    return parse_text(fixture_text(name))
