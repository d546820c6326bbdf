"""
Citation profiles and the declarative pattern language they are written in

A profile is data: named regex *fragments* that may reference each other as
``<NAME>``, and *patterns* made of space-separated fragment references or
literal words. ``<NAME>?`` marks an optional token. Tokens are joined by
mandatory whitespace; an optional token takes its separator with it.
"""
import json
import re
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Dict, List, Literal, Optional, Pattern

from pydantic import BaseModel, ConfigDict, Field

from ..errors import ConfigError
from ..models import ElementKind, Snapshot

_REFERENCE = re.compile(r"<([A-Z_]+)>")
_MAX_DEPTH = 10

BUILTIN_PROFILES = ("us", "de")


class ContextRule(BaseModel):
    """How a span names the document its keys belong to"""
    model_config = ConfigDict(frozen=True)

    regex: str
    kind: Literal["same", "external", "law"]


class CitationProfile(BaseModel):
    """Country-specific citation grammar"""
    model_config = ConfigDict(frozen=True)

    name: str
    key_order: str = "natural"
    markers: List[str] = Field(default_factory=list)
    fragments: Dict[str, str] = Field(default_factory=dict)
    patterns: List[str] = Field(default_factory=list)
    contexts: List[ContextRule] = Field(default_factory=list)
    locators: List[str] = Field(default_factory=list)
    range_words: List[str] = Field(default_factory=list)
    max_range: int = Field(default=500, ge=1)
    law_name_index: Optional[Dict[str, str]] = None

    def expand(self, body: str, depth: int = 0) -> str:
        """Inline fragment references"""
        if depth > _MAX_DEPTH:
            raise ConfigError(f"Profile {self.name}: fragment references nest too deeply")

        def replace(match: re.Match) -> str:
            name = match.group(1)
            if name not in self.fragments:
                raise ConfigError(f"Profile {self.name}: unknown fragment <{name}>")
            return f"(?:{self.expand(self.fragments[name], depth + 1)})"

        return _REFERENCE.sub(replace, body)

    def compile_pattern(self, template: str) -> Pattern:
        pieces = []
        need_separator = False
        for token in template.split():
            optional = token.startswith("<") and token.endswith(">?")
            name = token[:-1] if optional else token
            body = self.expand(name) if name.startswith("<") else re.escape(name)
            separator = r"\s+" if need_separator else ""
            if optional and not need_separator:
                pieces.append(rf"(?:{body}\s+)?")
            elif optional:
                pieces.append(f"(?:{separator}{body})?")
            else:
                pieces.append(f"{separator}{body}")
                need_separator = True
        return re.compile(r"(?<![\w§])" + "".join(pieces) + r"(?!\w)")

    @cached_property
    def find_patterns(self) -> List[Pattern]:
        return [self.compile_pattern(p) for p in self.patterns]

    @cached_property
    def marker_regex(self) -> Pattern:
        alternatives = []
        for marker in sorted(self.markers, key=len, reverse=True):
            escaped = re.escape(marker)
            prefix = r"(?<!\w)" if marker[0].isalnum() else r"(?<!§)"
            suffix = r"(?!\w)" if marker[-1].isalnum() else ""
            alternatives.append(prefix + escaped + suffix)
        return re.compile("|".join(alternatives) or r"(?!x)x", re.IGNORECASE)

    @cached_property
    def context_regexes(self) -> List[Pattern]:
        return [re.compile(self.expand(rule.regex)) for rule in self.contexts]

    @cached_property
    def locator_regex(self) -> Pattern:
        return re.compile("|".join(f"(?:{self.expand(l)})" for l in self.locators) or r"(?!x)x")

    @cached_property
    def numeral_regex(self) -> Pattern:
        return re.compile(self.expand(self.fragments.get("NUM", r"\d+[A-Za-z]*")))

    def with_law_index(self, snapshot: Snapshot) -> "CitationProfile":
        """Attach the names and abbreviations of laws valid at the snapshot date"""
        index: Dict[str, str] = {}
        for doc in snapshot.documents:
            if doc.date is not None and doc.date > snapshot.date:
                continue
            index[doc.key] = doc.key
            if doc.root.abbreviation:
                index[doc.root.abbreviation] = doc.key
            if doc.root.heading and doc.root.kind == ElementKind.DOCUMENT:
                index.setdefault(doc.root.heading, doc.key)
        return self.model_copy(update={"law_name_index": index})


def load_profile(name_or_path: str | Path) -> CitationProfile:
    """Load a builtin profile by name ("us", "de") or a profile JSON file"""
    if str(name_or_path) in BUILTIN_PROFILES:
        text = resources.files(__package__).joinpath("profiles", f"{name_or_path}.json").read_text(encoding="utf-8")
    else:
        path = Path(name_or_path)
        if not path.exists():
            raise ConfigError(f"Citation profile not found: {name_or_path}")
        text = path.read_text(encoding="utf-8")
    try:
        profile = CitationProfile.model_validate(json.loads(text))
        # compile eagerly so broken grammars fail at load
        profile.find_patterns, profile.context_regexes, profile.locator_regex
    except (ValueError, re.error) as e:
        raise ConfigError(f"Invalid citation profile {name_or_path}: {e}") from e
    return profile
