"""Line-oriented model files (``model lek`` / ``model dlca``).

Parsing never validates semantic constraints; it only rejects malformed
lines, duplicate worlds and references to undeclared worlds or agents.
Rendering is canonical: identifiers are sorted so equal models give
byte-identical files.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .errors import DuplicateWorld, ParseError, UnknownWorldInRelation
from .formulas import Atom, Nominal
from .models import DlcaModel, LekModel, image
from .syntax import DLCA, LEK, parse_atoms, render_atom

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_HEADER = re.compile(r"model\s+(lek|dlca)\s*$")
_AGENTS = re.compile(r"agents\s*:(.*)$")
_WORLD = re.compile(rf"world\s+({_IDENT})\s*:")
_EQUIV = re.compile(rf"equiv\s+({_IDENT})\s*:(.*)$")
_NBHD = re.compile(rf"nbhd\s+({_IDENT})\s+({_IDENT})\s*:(.*)$")
_PRE = re.compile(rf"pre\s+({_IDENT})\s+([PD])\s*:(.*)$")
_PAIR = re.compile(rf"\s*({_IDENT})\s*<=\s*({_IDENT})")
_SET = re.compile(r"\s*\{([^{}]*)\}")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def detect_dialect(text: str) -> str:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if not m:
            raise ParseError("expected 'model lek' or 'model dlca' header", lineno, 1)
        return LEK if m.group(1) == "lek" else DLCA
    raise ParseError("empty model file", 1, 1)


class _Reader:
    def __init__(self, text: str, dialect: str):
        self.dialect = dialect
        self.agents: list[str] = []
        self.agent_line: dict[str, int] = {}
        self.worlds: dict[str, int] = {}
        self.valuation: dict[str, list] = {}
        self.equiv: dict[str, set] = {}
        self.nbhd: dict[tuple, set] = {}
        self.pre: dict[tuple, set] = {}
        # (world, line, col) references checked once every world is known
        self.refs: list[tuple[str, int, int]] = []
        self.agent_refs: list[tuple[str, int, int]] = []
        self._read(text)

    def _read(self, text: str) -> None:
        seen_header = False
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip(raw)
            body = line.lstrip()
            if not body:
                continue
            indent = len(line) - len(body) + 1
            if not seen_header:
                m = _HEADER.match(body)
                want = "lek" if self.dialect == LEK else "dlca"
                if not m or m.group(1) != want:
                    raise ParseError(f"expected 'model {want}' header", lineno, indent)
                seen_header = True
                continue
            self._line(body, lineno, indent)
        if not seen_header:
            raise ParseError("empty model file", 1, 1)
        for w, line, col in self.refs:
            if w not in self.worlds:
                raise UnknownWorldInRelation(f"world {w!r} is not declared", line, col)
        for i, line, col in self.agent_refs:
            if i not in self.agent_line:
                raise ParseError(f"agent {i!r} is not declared", line, col)

    def _line(self, body: str, lineno: int, col: int) -> None:
        if m := _AGENTS.match(body):
            for name in m.group(1).split():
                if not re.fullmatch(_IDENT, name):
                    raise ParseError(f"bad agent name {name!r}", lineno, col)
                if name not in self.agent_line:
                    self.agents.append(name)
                    self.agent_line[name] = lineno
            return
        if m := _WORLD.match(body):
            self._world(m, body, lineno, col)
            return
        if m := _EQUIV.match(body):
            agent = m.group(1)
            self.agent_refs.append((agent, lineno, col))
            rel = self.equiv.setdefault(agent, set())
            offset = col + m.start(2)
            for chunk in m.group(2).split("|"):
                members = chunk.split()
                for w in members:
                    self.refs.append((w, lineno, offset))
                rel.update((a, b) for a in members for b in members)
            return
        if self.dialect == LEK and (m := _NBHD.match(body)):
            agent, world, rest = m.groups()
            self.agent_refs.append((agent, lineno, col))
            self.refs.append((world, lineno, col + m.start(2)))
            sets = self.nbhd.setdefault((agent, world), set())
            pos = 0
            while pos < len(rest):
                if not rest[pos:].strip():
                    break
                sm = _SET.match(rest, pos)
                if sm is None:
                    raise ParseError("expected '{...}' world set", lineno, col + m.start(3) + pos)
                members = sm.group(1).split()
                for w in members:
                    self.refs.append((w, lineno, col + m.start(3) + pos))
                sets.add(frozenset(members))
                pos = sm.end()
            return
        if self.dialect == DLCA and (m := _PRE.match(body)):
            agent, flavor, rest = m.groups()
            self.agent_refs.append((agent, lineno, col))
            rel = self.pre.setdefault((agent, flavor), set())
            pos = 0
            while rest[pos:].strip():
                pm = _PAIR.match(rest, pos)
                if pm is None:
                    raise ParseError("expected 'w<=v' pair", lineno, col + m.start(3) + pos)
                for w in pm.groups():
                    self.refs.append((w, lineno, col + m.start(3) + pos))
                rel.add(pm.groups())
                pos = pm.end()
            return
        keyword = body.split()[0]
        raise ParseError(f"unrecognised line starting with {keyword!r}", lineno, col)

    def _world(self, m, body: str, lineno: int, col: int) -> None:
        name = m.group(1)
        if name in self.worlds:
            raise DuplicateWorld(
                f"world {name!r} already declared on line {self.worlds[name]}", lineno, col
            )
        self.worlds[name] = lineno
        rest = body[m.end():]
        start = col + m.end()
        props = []
        if self.dialect == DLCA and "nom:" in rest:
            atoms_text, nom_text = rest.split("nom:", 1)
            props += parse_atoms(atoms_text, DLCA, lineno, start)
            props += parse_atoms(nom_text, DLCA, lineno, start + len(atoms_text) + 4)
        else:
            props += parse_atoms(rest, self.dialect, lineno, start)
        self.valuation[name] = props


def parse_lek_model(text: str) -> LekModel:
    r = _Reader(text, LEK)
    return LekModel(
        worlds=r.worlds.keys(),
        agents=r.agents,
        valuation=r.valuation,
        equiv=r.equiv,
        nbhd=r.nbhd,
    )


def parse_dlca_model(text: str) -> DlcaModel:
    r = _Reader(text, DLCA)
    return DlcaModel(
        worlds=r.worlds.keys(),
        agents=r.agents,
        valuation=r.valuation,
        equiv=r.equiv,
        pre=r.pre,
    )


def parse_model(text: str) -> Union[LekModel, DlcaModel]:
    if detect_dialect(text) == LEK:
        return parse_lek_model(text)
    return parse_dlca_model(text)


def load_model(path) -> Union[LekModel, DlcaModel]:
    return parse_model(Path(path).read_text(encoding="utf-8"))


# -- rendering --------------------------------------------------------------

def _prop_key(p) -> tuple:
    return (p.pred, p.t1, float(p.t2), tuple(map(str, p.args)))


def _world_line(m, w: str) -> str:
    atoms = sorted((p for p in m.valuation[w] if isinstance(p, Atom)), key=_prop_key)
    noms = sorted((p for p in m.valuation[w] if isinstance(p, Nominal)),
                  key=lambda n: (n.name, n.t))
    text = f"world {w}:"
    if atoms:
        text += " " + " ".join(render_atom(a) for a in atoms)
    if noms:
        text += " nom: " + " ".join(f"{n.name}@{n.t}" for n in noms)
    return text


def _partition(rel: frozenset, worlds) -> list:
    """Equivalence classes of ``rel``; raises if ``rel`` is not a partition of its field."""
    classes = []
    seen = set()
    for w in sorted(worlds):
        if w in seen:
            continue
        cls = image(rel, w)
        if not cls:
            continue
        if w not in cls or pairs_of(cls) - rel:
            raise ValueError("relation is not an equivalence; it has no partition form")
        classes.append(sorted(cls))
        seen |= cls
    field_ = {a for a, _ in rel} | {b for _, b in rel}
    covered = set().union(*map(set, classes)) if classes else set()
    if field_ != covered or sum(len(c) ** 2 for c in classes) != len(rel):
        raise ValueError("relation is not an equivalence; it has no partition form")
    return classes


def pairs_of(cls) -> set:
    return {(a, b) for a in cls for b in cls}


def _equiv_lines(m) -> list:
    lines = []
    for i in sorted(m.agents):
        classes = _partition(m.equiv.get(i, frozenset()), m.worlds)
        if classes:
            lines.append(f"equiv {i}: " + " | ".join(" ".join(c) for c in classes))
    return lines


def render_lek_model(m: LekModel) -> str:
    lines = ["model lek", "agents: " + " ".join(sorted(m.agents))]
    lines += [_world_line(m, w) for w in sorted(m.worlds)]
    lines += _equiv_lines(m)
    for (i, w) in sorted(m.nbhd):
        sets = sorted(sorted(s) for s in m.nbhd[(i, w)])
        lines.append(f"nbhd {i} {w}: " + " ".join("{" + " ".join(s) + "}" for s in sets))
    return "\n".join(lines) + "\n"


def render_dlca_model(m: DlcaModel) -> str:
    lines = ["model dlca", "agents: " + " ".join(sorted(m.agents))]
    lines += [_world_line(m, w) for w in sorted(m.worlds)]
    lines += _equiv_lines(m)
    for (i, flavor) in sorted(m.pre):
        rel = m.pre[(i, flavor)]
        if rel:
            lines.append(f"pre {i} {flavor}: " + " ".join(f"{a}<={b}" for a, b in sorted(rel)))
    return "\n".join(lines) + "\n"


def render_model(m) -> str:
    if isinstance(m, LekModel):
        return render_lek_model(m)
    return render_dlca_model(m)


def save_model(m, path) -> None:
    Path(path).write_text(render_model(m), encoding="utf-8", newline="\n")
