"""Plain-text polynomial parser.

Grammar (whitespace ignored):

    poly     := [ '+' | '-' ] term { ( '+' | '-' ) term }
    term     := factor { [ '*' ] factor }
    factor   := rational | variable [ '^' natural ]
    rational := natural [ '/' natural ]

Variables must come from the ring's declared list.  Multiplication signs
are optional: ``2x^3y`` and ``2*x^3*y`` parse the same.
"""

import re

from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(/))")


class ParseError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character %r at position %d in %r" % (text[pos], pos, text))
        pos = m.end()
        num, name, caret, star, plus, minus, slash = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        elif caret:
            out.append(("pow", None))
        elif star:
            out.append(("mul", None))
        elif plus:
            out.append(("add", None))
        elif minus:
            out.append(("sub", None))
        elif slash:
            out.append(("div", None))
    return out


def parse_poly(text, ring):
    """Parse ``text`` into a Poly over ``ring``."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial in %r" % (text,))
    fld = ring.field
    n = ring.nvars
    pos = 0
    total = {}

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    while pos < len(toks):
        sign = 1
        while peek() in ("add", "sub"):
            if toks[pos][0] == "sub":
                sign = -sign
            pos += 1
        if pos >= len(toks):
            raise ParseError("dangling sign in %r" % (text,))
        coeff = fld.of(sign)
        exps = [0] * n
        saw_factor = False
        while True:
            kind = peek()
            if kind == "mul":
                pos += 1
                continue
            if kind == "num":
                value = toks[pos][1]
                pos += 1
                if peek() == "div":
                    pos += 1
                    if peek() != "num":
                        raise ParseError("expected denominator in %r" % (text,))
                    den = toks[pos][1]
                    pos += 1
                    coeff = fld.mul(coeff, fld.div(fld.of(value), fld.of(den)))
                else:
                    coeff = fld.mul(coeff, fld.of(value))
                saw_factor = True
            elif kind == "var":
                name = toks[pos][1]
                if name not in ring.vars:
                    raise ParseError("unknown variable %r in %r (declared: %s)"
                                     % (name, text, ", ".join(ring.vars)))
                i = ring.vars.index(name)
                pos += 1
                e = 1
                if peek() == "pow":
                    pos += 1
                    if peek() != "num":
                        raise ParseError("expected exponent in %r" % (text,))
                    e = toks[pos][1]
                    pos += 1
                exps[i] += e
                saw_factor = True
            else:
                break
        if not saw_factor:
            raise ParseError("expected a term in %r" % (text,))
        key = tuple(exps)
        prev = total.get(key, fld.zero)
        total[key] = fld.add(prev, coeff)

    return Poly(ring, {m: c for m, c in total.items() if not fld.is_zero(c)})
