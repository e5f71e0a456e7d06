"""Line-oriented text format for groups, maps, modules and presentations.

A file is a sequence of named blocks::

    # comments run to end of line
    group C4 { table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]] labels = ["1","a","a^2","a^3"] }
    group C2 { table = [[0,1],[1,0]] }
    hom f: C4 -> C2 { map = [0,1,0,1] }
    action inv: C2 on C4 { table = [[0,1,2,3],[0,3,2,1]] }
    precrossed X { m = C4 p = C2 act = inv d = f }
    xmod Y { m = ... p = ... act = ... d = ... }
    x2mod Z { l = L m = M p = P d2 = h2 d1 = h1 actl = a actm = b lifting = [[...]] }
    xmorph F: X -> Y { mu = h eta = k }
    x2morph G: Z -> W { f2 = a f1 = b f0 = c }
    presentation Pr { generators = ["a","b"] relators = ["a^2", "b^3", "a b a^-1 b"] legend = [...] }

Values are JSON (lists, strings, numbers) or bare names of other blocks.
``liftingfile = "path"`` reads the lifting table from a JSON file next to
the input. Every object is validated when loaded. ``serialize`` writes blocks
ordered by kind and then name, so parsing its output and serializing again
reproduces the same bytes.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import CrossedModError, ValidationFailure
from .fp import Presentation, format_word, parse_word
from .groups import ActionTable, FiniteGroup, GroupHom, group_from_table
from .x2mod import TwoCrossedModule, X2Morphism
from .xmod import CrossedModule, PreCrossedModule, XModMorphism

KINDS = ("group", "hom", "action", "presentation", "precrossed", "xmod", "x2mod", "xmorph", "x2morph")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(CrossedModError):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "<text>"):
        super().__init__(f"{source}:{line}:{col}: {message}", witness=(line, col))
        self.line, self.col, self.source = line, col, source


class UnresolvedReference(CrossedModError):
    def __init__(self, name: str, kind: str, block: str):
        super().__init__(f"block {block!r} refers to unknown {kind} {name!r}", witness=name)
        self.name, self.kind, self.block = name, kind, block


class ValidationError(CrossedModError):
    """A block whose data fails validation; ``cause`` is the underlying failure."""

    def __init__(self, block: str, cause: Exception):
        witness = getattr(cause, "witness", None)
        super().__init__(f"block {block!r}: {type(cause).__name__}: {cause}", witness=witness)
        self.block, self.cause = block, cause


@dataclass
class _Block:
    kind: str
    name: str
    header: tuple[str, ...]
    fields: dict[str, Any]
    line: int
    base_dir: str | None


@dataclass
class Workspace:
    objects: dict[str, tuple[str, Any]] = field(default_factory=dict)

    def __len__(self):
        return len(self.objects)

    def __contains__(self, name):
        return name in self.objects

    def __getitem__(self, name):
        return self.objects[name][1]

    def kind(self, name) -> str:
        return self.objects[name][0]

    def of_kind(self, kind: str) -> dict[str, Any]:
        return {n: o for n, (k, o) in self.objects.items() if k == kind}

    def name_of(self, kind: str, obj) -> str | None:
        # equal objects are interchangeable; the smallest name keeps output stable
        names = [n for n, (k, o) in self.objects.items() if k == kind and (o is obj or (type(o) is type(obj) and o == obj))]
        return min(names) if names else None

    def _fresh(self, base: str) -> str:
        if base not in self.objects:
            return base
        i = 2
        while f"{base}{i}" in self.objects:
            i += 1
        return f"{base}{i}"

    def _ensure(self, kind, obj, hint: str) -> str:
        n = self.name_of(kind, obj)
        return n if n is not None else self.put(hint, obj, kind=kind)

    def put(self, name: str, obj, kind: str | None = None) -> str:
        """Add ``obj`` and, under derived names, any parts not already present. Returns the name used."""
        kind = kind or kind_of(obj)
        existing = self.name_of(kind, obj)
        if existing is not None:
            return existing
        name = self._fresh(name)
        if kind == "hom":
            self._ensure("group", obj.src, f"{name}_src")
            self._ensure("group", obj.dst, f"{name}_dst")
        elif kind == "action":
            self._ensure("group", obj.actor, f"{name}_actor")
            self._ensure("group", obj.space, f"{name}_space")
        elif kind in ("precrossed", "xmod"):
            self._ensure("group", obj.M, f"{name}_M")
            self._ensure("group", obj.P, f"{name}_P")
            self._ensure("action", obj.act, f"{name}_act")
            self._ensure("hom", obj.boundary, f"{name}_d")
        elif kind == "x2mod":
            for part, hint in ((obj.L, "L"), (obj.M, "M"), (obj.P, "P")):
                self._ensure("group", part, f"{name}_{hint}")
            self._ensure("hom", obj.d2, f"{name}_d2")
            self._ensure("hom", obj.d1, f"{name}_d1")
            self._ensure("action", obj.actL, f"{name}_actl")
            self._ensure("action", obj.actM, f"{name}_actm")
        elif kind == "xmorph":
            self._ensure(kind_of(obj.src), obj.src, f"{name}_src")
            self._ensure(kind_of(obj.dst), obj.dst, f"{name}_dst")
            self._ensure("hom", obj.mu, f"{name}_mu")
            self._ensure("hom", obj.eta, f"{name}_eta")
        elif kind == "x2morph":
            self._ensure("x2mod", obj.src, f"{name}_src")
            self._ensure("x2mod", obj.dst, f"{name}_dst")
            for h, hint in ((obj.f2, "f2"), (obj.f1, "f1"), (obj.f0, "f0")):
                self._ensure("hom", h, f"{name}_{hint}")
        self.objects[name] = (kind, obj)
        return name

    def pick(self, kind: str | Iterable[str], name: str | None = None):
        kinds = (kind,) if isinstance(kind, str) else tuple(kind)
        if name is not None:
            if name not in self.objects or self.kind(name) not in kinds:
                raise UnresolvedReference(name, "/".join(kinds), "<command line>")
            return name, self[name]
        found = [(n, o) for n, (k, o) in self.objects.items() if k in kinds]
        if len(found) != 1:
            raise UnresolvedReference("?", "/".join(kinds), f"<command line: {len(found)} candidates, name one>")
        return found[0]


def kind_of(obj) -> str:
    if isinstance(obj, FiniteGroup):
        return "group"
    if isinstance(obj, GroupHom):
        return "hom"
    if isinstance(obj, ActionTable):
        return "action"
    if isinstance(obj, Presentation):
        return "presentation"
    if isinstance(obj, CrossedModule):
        return "xmod"
    if isinstance(obj, PreCrossedModule):
        return "precrossed"
    if isinstance(obj, TwoCrossedModule):
        return "x2mod"
    if isinstance(obj, XModMorphism):
        return "xmorph"
    if isinstance(obj, X2Morphism):
        return "x2morph"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# parsing


class _Lexer:
    def __init__(self, text: str, source: str):
        self.text, self.source, self.pos = text, source, 0

    def where(self, pos=None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def error(self, msg, pos=None):
        line, col = self.where(pos)
        return ParseError(msg, line, col, self.source)

    def skip(self):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "#":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def ident(self, what="name") -> str:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def value(self):
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if m and m.group(0) not in ("true", "false", "null"):
            self.pos = m.end()
            return _Ref(m.group(0))
        try:
            v, end = json.JSONDecoder().raw_decode(self.text, self.pos)
        except json.JSONDecodeError as e:
            raise self.error(f"bad value: {e.msg}", e.pos) from None
        self.pos = end
        return v


@dataclass(frozen=True)
class _Ref:
    name: str


_HEADERS = {"hom": "->", "action": "on", "xmorph": "->", "x2morph": "->"}


def _read_blocks(text: str, source: str, base_dir: str | None) -> list[_Block]:
    lx = _Lexer(text, source)
    blocks = []
    while not lx.at_end():
        start = lx.pos
        kind = lx.ident("block kind")
        if kind not in KINDS:
            raise lx.error(f"unknown block kind {kind!r}", start)
        name = lx.ident("block name")
        header: tuple[str, ...] = ()
        if kind in _HEADERS:
            lx.expect(":")
            a = lx.ident()
            sep = _HEADERS[kind]
            lx.expect(sep)
            b = lx.ident()
            header = (a, b)
        lx.expect("{")
        fields: dict[str, Any] = {}
        while not lx.peek("}"):
            if lx.at_end():
                raise lx.error("unterminated block")
            kpos = lx.pos
            key = lx.ident("field name")
            if key in fields:
                raise lx.error(f"duplicate field {key!r}", kpos)
            lx.expect("=")
            fields[key] = lx.value()
        lx.expect("}")
        blocks.append(_Block(kind, name, header, fields, lx.where(start)[0], base_dir))
    return blocks


def _int_table(v, what):
    if not isinstance(v, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in v):
        raise ValueError(f"{what} must be a list of integer lists")
    return v


def _build(b: _Block, ws: Workspace):
    f = dict(b.fields)

    def ref(key, kinds):
        kinds = (kinds,) if isinstance(kinds, str) else kinds
        v = f.get(key)
        if not isinstance(v, _Ref):
            raise ParseError(f"field {key!r} of {b.name!r} must name a {'/'.join(kinds)}", b.line)
        if v.name not in ws or ws.kind(v.name) not in kinds:
            raise UnresolvedReference(v.name, "/".join(kinds), b.name)
        return ws[v.name]

    def named(n, kinds):
        kinds = (kinds,) if isinstance(kinds, str) else kinds
        if n not in ws or ws.kind(n) not in kinds:
            raise UnresolvedReference(n, "/".join(kinds), b.name)
        return ws[n]

    def need(key):
        if key not in f:
            raise ParseError(f"block {b.name!r} is missing field {key!r}", b.line)
        return f[key]

    k = b.kind
    if k == "group":
        labels = f.get("labels")
        return group_from_table(_int_table(need("table"), "table"), labels)
    if k == "hom":
        return GroupHom(named(b.header[0], "group"), named(b.header[1], "group"), tuple(need("map")))
    if k == "action":
        rows = _int_table(need("table"), "table")
        return ActionTable(named(b.header[0], "group"), named(b.header[1], "group"), tuple(map(tuple, rows)))
    if k == "presentation":
        gens = need("generators")
        return Presentation(tuple(gens), tuple(parse_word(gens, r) for r in need("relators")), f.get("legend"))
    if k in ("precrossed", "xmod"):
        cls = CrossedModule if k == "xmod" else PreCrossedModule
        return cls(ref("m", "group"), ref("p", "group"), ref("act", "action"), ref("d", "hom"))
    if k == "x2mod":
        if "lifting" in f:
            lifting = _int_table(f["lifting"], "lifting")
        else:
            path = need("liftingfile")
            if b.base_dir and not os.path.isabs(path):
                path = os.path.join(b.base_dir, path)
            with open(path, encoding="utf-8") as fh:
                lifting = _int_table(json.load(fh), "lifting")
        return TwoCrossedModule(
            ref("l", "group"), ref("m", "group"), ref("p", "group"), ref("d2", "hom"), ref("d1", "hom"),
            ref("actl", "action"), ref("actm", "action"), tuple(map(tuple, lifting)),
        )
    if k == "xmorph":
        src, dst = named(b.header[0], ("precrossed", "xmod")), named(b.header[1], ("precrossed", "xmod"))
        return XModMorphism(ref("mu", "hom"), ref("eta", "hom"), src, dst)
    if k == "x2morph":
        src, dst = named(b.header[0], "x2mod"), named(b.header[1], "x2mod")
        return X2Morphism(ref("f2", "hom"), ref("f1", "hom"), ref("f0", "hom"), src, dst)
    raise AssertionError(k)


def _load(blocks: list[_Block], ws: Workspace) -> Workspace:
    for b in blocks:
        if b.name in ws:
            raise ParseError(f"duplicate name {b.name!r}", b.line)
    seen = set()
    for b in blocks:
        if b.name in seen:
            raise ParseError(f"duplicate name {b.name!r}", b.line)
        seen.add(b.name)
    for kind in KINDS:
        for b in blocks:
            if b.kind != kind:
                continue
            try:
                obj = _build(b, ws)
            except (ParseError, UnresolvedReference):
                raise
            except (ValidationFailure, ValueError, TypeError, IndexError) as e:
                raise ValidationError(b.name, e) from e
            ws.objects[b.name] = (kind, obj)
    return ws


def parse_text(text: str, *, source: str = "<text>", base_dir: str | None = None, workspace: Workspace | None = None) -> Workspace:
    ws = workspace if workspace is not None else Workspace()
    return _load(_read_blocks(text, source, base_dir), ws)


def parse_files(paths: Iterable[str]) -> Workspace:
    """Parse several files into one workspace; references may cross files."""
    blocks = []
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            text = fh.read()
        blocks.extend(_read_blocks(text, p, os.path.dirname(os.path.abspath(p))))
    return _load(blocks, Workspace())


# ---------------------------------------------------------------------------
# serialization


def _j(v) -> str:
    return json.dumps(v, ensure_ascii=False)


def _table(key: str, rows) -> list[str]:
    rows = [list(r) for r in rows]
    if len(rows) <= 1:
        return [f"  {key} = {_j(rows)}"]
    out = [f"  {key} = ["]
    for i, r in enumerate(rows):
        out.append(f"    {_j(r)}{',' if i + 1 < len(rows) else ''}")
    out.append("  ]")
    return out


def _block_lines(ws: Workspace, name: str, kind: str, obj) -> list[str]:
    nm = lambda k, o: ws.name_of(k, o)  # noqa: E731
    if kind == "group":
        lines = [f"group {name} {{", *_table("table", obj.mul)]
        if obj.labels is not None:
            lines.append(f"  labels = {_j(list(obj.labels))}")
    elif kind == "hom":
        lines = [f"hom {name}: {nm('group', obj.src)} -> {nm('group', obj.dst)} {{", f"  map = {_j(list(obj.map))}"]
    elif kind == "action":
        lines = [f"action {name}: {nm('group', obj.actor)} on {nm('group', obj.space)} {{", *_table("table", obj.act)]
    elif kind == "presentation":
        lines = [
            f"presentation {name} {{",
            f"  generators = {_j(list(obj.generators))}",
            *_strings("relators", [format_word(obj.generators, r) for r in obj.relators]),
        ]
        if obj.legend is not None:
            lines.append(f"  legend = {_j(list(obj.legend))}")
    elif kind in ("precrossed", "xmod"):
        lines = [
            f"{kind} {name} {{",
            f"  m = {nm('group', obj.M)}",
            f"  p = {nm('group', obj.P)}",
            f"  act = {nm('action', obj.act)}",
            f"  d = {nm('hom', obj.boundary)}",
        ]
    elif kind == "x2mod":
        lines = [
            f"x2mod {name} {{",
            f"  l = {nm('group', obj.L)}",
            f"  m = {nm('group', obj.M)}",
            f"  p = {nm('group', obj.P)}",
            f"  d2 = {nm('hom', obj.d2)}",
            f"  d1 = {nm('hom', obj.d1)}",
            f"  actl = {nm('action', obj.actL)}",
            f"  actm = {nm('action', obj.actM)}",
            *_table("lifting", obj.lifting),
        ]
    elif kind == "xmorph":
        lines = [
            f"xmorph {name}: {nm(kind_of(obj.src), obj.src)} -> {nm(kind_of(obj.dst), obj.dst)} {{",
            f"  mu = {nm('hom', obj.mu)}",
            f"  eta = {nm('hom', obj.eta)}",
        ]
    elif kind == "x2morph":
        lines = [
            f"x2morph {name}: {nm('x2mod', obj.src)} -> {nm('x2mod', obj.dst)} {{",
            f"  f2 = {nm('hom', obj.f2)}",
            f"  f1 = {nm('hom', obj.f1)}",
            f"  f0 = {nm('hom', obj.f0)}",
        ]
    else:
        raise AssertionError(kind)
    lines.append("}")
    return lines


def _strings(key, items) -> list[str]:
    if len(items) <= 1:
        return [f"  {key} = {_j(items)}"]
    out = [f"  {key} = ["]
    for i, s in enumerate(items):
        out.append(f"    {_j(s)}{',' if i + 1 < len(items) else ''}")
    out.append("  ]")
    return out


def serialize(ws: Workspace) -> str:
    chunks = []
    for kind in KINDS:
        for name in sorted(ws.of_kind(kind)):
            chunks.append("\n".join(_block_lines(ws, name, kind, ws[name])))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
