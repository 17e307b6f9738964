"""Line-oriented scenario files: ``[kind NAME]`` headers followed by ``key = value`` lines.

Grammar::

    file     := (blank | comment | section)*
    comment  := '#' text
    section  := '[' KIND SP NAME ']' NL entry*
    entry    := KEY SP* '=' SP* value NL continuation*
    continuation := (SP | TAB)+ text NL      (appended to the value after one space)

``KIND`` is one of ``suite ring ambient pair map lattice region check``;
``NAME`` and ``KEY`` match ``[A-Za-z0-9_.+-]+``.  Names are unique per kind
and keys unique per section.  Lists inside values are separated by ``;``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

KINDS = ("suite", "ring", "ambient", "pair", "map", "lattice", "region", "check")

_HEADER = re.compile(r"^\[\s*([A-Za-z]+)\s+([A-Za-z0-9_.+\-]+)\s*\]\s*$")
_KEY = re.compile(r"^([A-Za-z0-9_.+\-]+)\s*=\s*")


class ScenarioError(ValueError):
    """Malformed or unresolvable scenario input, with a source location."""

    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(self.location() + message)

    def location(self):
        parts = [str(p) for p in (self.path, self.line, self.column) if p is not None]
        return ":".join(parts) + ": " if parts else ""


@dataclass(frozen=True)
class Entry:
    key: str
    value: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Section:
    kind: str
    name: str
    entries: tuple
    line: int = field(default=0, compare=False)
    path: str | None = field(default=None, compare=False)

    def has(self, key):
        return any(e.key == key for e in self.entries)

    def entry(self, key):
        for e in self.entries:
            if e.key == key:
                return e
        return None

    def get(self, key, default=None):
        e = self.entry(key)
        return default if e is None else e.value

    def require(self, key):
        e = self.entry(key)
        if e is None:
            raise ScenarioError(f"[{self.kind} {self.name}] is missing '{key}'", self.line, 1, self.path)
        return e.value

    def error(self, message, key=None, offset=0):
        """A :class:`ScenarioError` located at the value of ``key`` (plus ``offset`` characters)."""
        e = self.entry(key) if key else None
        if e is None:
            return ScenarioError(message, self.line, 1, self.path)
        return ScenarioError(message, e.line, e.column + offset, self.path)

    def items(self):
        return [(e.key, e.value) for e in self.entries]


@dataclass(frozen=True)
class ScenarioFile:
    sections: tuple
    path: str | None = field(default=None, compare=False)

    def of_kind(self, kind):
        return [s for s in self.sections if s.kind == kind]

    def find(self, kind, name):
        for s in self.sections:
            if s.kind == kind and s.name == name:
                return s
        return None

    @property
    def suite(self):
        s = self.of_kind("suite")
        return s[0] if s else None


def parse_scenario(text, path=None):
    """Parse scenario text; raises :class:`ScenarioError` with line and column."""
    sections = []
    current = None
    entries = []
    seen_names = set()
    seen_keys = set()
    last = None

    def close():
        nonlocal current, entries
        if current is not None:
            kind, name, line = current
            sections.append(Section(kind, name, tuple(entries), line, path))
        current, entries = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            last = None if not stripped else last
            continue
        if line[0] in " \t":
            if last is None:
                raise ScenarioError("continuation line without a preceding entry", lineno, 1, path)
            e = entries[last]
            entries[last] = Entry(e.key, e.value + " " + stripped, e.line, e.column)
            continue
        if line.startswith("["):
            m = _HEADER.match(line)
            if not m:
                raise ScenarioError("malformed section header; expected [kind NAME]", lineno, 1, path)
            kind, name = m.group(1), m.group(2)
            if kind not in KINDS:
                raise ScenarioError(f"unknown section kind '{kind}'", lineno, m.start(1) + 1, path)
            if (kind, name) in seen_names:
                raise ScenarioError(f"duplicate {kind} name '{name}'", lineno, m.start(2) + 1, path)
            close()
            seen_names.add((kind, name))
            seen_keys = set()
            current = (kind, name, lineno)
            last = None
            continue
        if current is None:
            raise ScenarioError("entry outside of a section", lineno, 1, path)
        m = _KEY.match(line)
        if not m:
            raise ScenarioError("expected 'key = value'", lineno, 1, path)
        key = m.group(1)
        if key in seen_keys:
            raise ScenarioError(f"duplicate key '{key}'", lineno, 1, path)
        seen_keys.add(key)
        value = line[m.end():].strip()
        entries.append(Entry(key, value, lineno, m.end() + 1))
        last = len(entries) - 1
    close()
    return ScenarioFile(tuple(sections), path)


def serialize_scenario(sf):
    """Canonical text: one ``key = value`` line per entry, blank line between sections."""
    blocks = []
    for s in sf.sections:
        lines = [f"[{s.kind} {s.name}]"]
        for e in s.entries:
            lines.append(f"{e.key} = {e.value}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read(), str(path))


def split_list(value, sep=";"):
    """Nonempty stripped items of a separated list."""
    return [x.strip() for x in value.split(sep) if x.strip()]


def split_list_positions(value, sep=";"):
    """Items with their character offsets inside ``value``."""
    out = []
    pos = 0
    for part in value.split(sep):
        lead = len(part) - len(part.lstrip())
        if part.strip():
            out.append((part.strip(), pos + lead))
        pos += len(part) + len(sep)
    return out
