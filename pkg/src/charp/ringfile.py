"""Parser for the ring-description text format.

::

    ring { char = 5 ; vars = [x, y, z, w] ; order = grevlex ; relations = [x*y - z*w] }
    ideal M = [x, y, z, w]

An optional ``local = [x, y, z]`` entry inside the ring block designates the
variables generating the maximal ideal (default: all of them).  ``#`` starts a
comment.  Polynomials use ``+ - * ^``, integer literals and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ring_core import PolyRing, Polynomial, RingError, RingPresentation

__all__ = ["ParseError", "RingFile", "parse_ring_file", "parse_polynomial", "format_ring_file"]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*^(){}\[\];,=])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line0: int = 1, col0: int = 1):
    text = text.replace("−", "-")
    toks = []
    pos, line, col = 0, line0, col0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, "^" if s == "**" else s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text, kind=None):
        t = self.tok
        if (kind and t.kind != kind) or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", t.line, t.col)
        return self.next()

    # polynomial grammar:  sum := term (('+'|'-') term)* ; term := unary ('*' unary)*
    # unary := '-' unary | power ; power := atom ('^' int)?
    def poly(self, ring: PolyRing) -> Polynomial:
        neg = False
        if self.tok.text in "+-" and self.tok.kind == "op":
            neg = self.next().text == "-"
        f = self.term(ring)
        if neg:
            f = -f
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.next().text
            g = self.term(ring)
            f = f + g if op == "+" else f - g
        return f

    def term(self, ring):
        f = self.unary(ring)
        while self.tok.kind == "op" and self.tok.text == "*":
            self.next()
            f = f * self.unary(ring)
        return f

    def unary(self, ring):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.next()
            return -self.unary(ring)
        return self.power(ring)

    def power(self, ring):
        f = self.atom(ring)
        if self.tok.kind == "op" and self.tok.text == "^":
            self.next()
            t = self.expect(None, "int")
            f = f ** int(t.text)
        return f

    def atom(self, ring):
        t = self.tok
        if t.kind == "int":
            self.next()
            return ring.const(int(t.text))
        if t.kind == "name":
            self.next()
            if t.text not in ring.vars:
                raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
            return ring.gen(t.text)
        if t.text == "(":
            self.next()
            f = self.poly(ring)
            self.expect(")")
            return f
        raise ParseError(f"unexpected {t.text or 'end of input'!r} in polynomial", t.line, t.col)

    def poly_list(self, ring):
        self.expect("[")
        out = []
        if self.tok.text == "]":
            self.next()
            return out
        while True:
            out.append(self.poly(ring))
            if self.tok.text == ",":
                self.next()
                continue
            self.expect("]")
            return out

    def name_list(self):
        self.expect("[")
        out = []
        if self.tok.text == "]":
            self.next()
            return out
        while True:
            out.append(self.expect(None, "name"))
            if self.tok.text == ",":
                self.next()
                continue
            self.expect("]")
            return out


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    ps = _Parser(_tokenize(text))
    f = ps.poly(ring)
    if ps.tok.kind != "eof":
        raise ParseError(f"trailing input {ps.tok.text!r}", ps.tok.line, ps.tok.col)
    return f


@dataclass
class RingFile:
    ring: RingPresentation
    ideals: dict

    def ideal(self, name: str):
        try:
            return self.ideals[name]
        except KeyError:
            raise ParseError(f"unknown ideal {name!r}") from None


def parse_ring_file(text: str, name: str = "") -> RingFile:
    """Parse a ring description; returns the presentation and named ideals."""
    from .groebner import Ideal

    ps = _Parser(_tokenize(text))
    start = ps.expect("ring")
    ps.expect("{")
    fields = {}
    raw_rel = None
    while ps.tok.text != "}":
        key = ps.expect(None, "name")
        if key.text in fields or (key.text == "relations" and raw_rel is not None):
            raise ParseError(f"duplicate field {key.text!r}", key.line, key.col)
        ps.expect("=")
        if key.text == "char":
            t = ps.expect(None, "int")
            fields["char"] = (int(t.text), t)
        elif key.text in ("vars", "local"):
            fields[key.text] = (ps.name_list(), key)
        elif key.text == "order":
            fields["order"] = (ps.expect(None, "name"), key)
        elif key.text == "relations":
            # parsed after vars are known; remember the token span
            j0 = ps.i
            depth = 0
            while True:
                t = ps.next()
                if t.kind == "eof":
                    raise ParseError("unterminated relations list", key.line, key.col)
                depth += t.text == "["
                depth -= t.text == "]"
                if depth == 0:
                    break
            raw_rel = (j0, ps.i)
        else:
            raise ParseError(f"unknown ring field {key.text!r}", key.line, key.col)
        if ps.tok.text == ";":
            ps.next()
        elif ps.tok.text != "}":
            raise ParseError(f"expected ';' or '}}', got {ps.tok.text!r}", ps.tok.line, ps.tok.col)
    ps.expect("}")
    for req in ("char", "vars"):
        if req not in fields:
            raise ParseError(f"ring block is missing {req!r}", start.line, start.col)
    p, ptok = fields["char"]
    vtoks = fields["vars"][0]
    vars = [t.text for t in vtoks]
    order = fields["order"][0].text if "order" in fields else "grevlex"
    try:
        from .ring_core import MonomialOrder

        ring = PolyRing(p, tuple(vars), MonomialOrder(order, len(vars)))
    except RingError as exc:
        tok = ptok if "prime" in str(exc) else fields.get("order", (None, start))[1]
        raise ParseError(str(exc), tok.line, tok.col) from None
    relations = []
    if raw_rel is not None:
        sub = _Parser(ps.toks[raw_rel[0]:raw_rel[1]] + [ps.toks[-1]])
        relations = sub.poly_list(ring)
    local = None
    if "local" in fields:
        local = []
        for t in fields["local"][0]:
            if t.text not in vars:
                raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
            local.append(t.text)
    try:
        pres = RingPresentation.make(p, vars, relations, order, local, name)
    except RingError as exc:
        raise ParseError(str(exc), start.line, start.col) from None

    ideals = {}
    while ps.tok.kind != "eof":
        kw = ps.expect("ideal")
        nm = ps.expect(None, "name")
        if nm.text in ideals:
            raise ParseError(f"duplicate ideal {nm.text!r}", nm.line, nm.col)
        ps.expect("=")
        gens = ps.poly_list(ring)
        ideals[nm.text] = Ideal(pres, gens, name=nm.text)
        if ps.tok.text == ";":
            ps.next()
        del kw
    return RingFile(pres, ideals)


def format_ring_file(R: RingPresentation, ideals: dict | None = None) -> str:
    """Render a presentation (and optional named ideals) in the ring format."""
    order = R.order.kind if hasattr(R.order, "perm") else "grevlex"
    lines = [
        "ring { char = %d ; vars = [%s] ; order = %s ; relations = [%s]%s }"
        % (
            R.p,
            ", ".join(R.vars),
            order,
            ", ".join(str(r) for r in R.relations),
            "" if R.is_fp_local else " ; local = [%s]" % ", ".join(R.vars[i] for i in R.local),
        )
    ]
    for name, I in (ideals or {}).items():
        lines.append("ideal %s = [%s]" % (name, ", ".join(str(g) for g in I.generators)))
    return "\n".join(lines) + "\n"
