"""Monomial orderings on exponent tuples.

Global orders (1 is smallest) admit the classical division algorithm;
the local order ``negdegrevlex`` (1 is largest) is used for computations
in the localization at the origin and requires Mora reduction.
"""

DEGREVLEX = "degrevlex"
LEX = "lex"
NEGDEGREVLEX = "negdegrevlex"

ORDERS = (DEGREVLEX, LEX, NEGDEGREVLEX)


def is_global(order):
    """True when every variable is larger than 1 under the order."""
    return order in (DEGREVLEX, LEX)


def key_func(order):
    """Return a sort key on exponent tuples; larger key = larger monomial.

    Ties in the graded orders are broken by reverse lexicographic
    comparison (last differing exponent decides, smaller wins).
    """
    if order == DEGREVLEX:
        def key(e):
            return (sum(e), tuple(-v for v in reversed(e)))
    elif order == LEX:
        def key(e):
            return e
    elif order == NEGDEGREVLEX:
        def key(e):
            return (-sum(e), tuple(-v for v in reversed(e)))
    else:
        raise ValueError("unknown order %r" % (order,))
    return key


def module_key_func(order, split=None):
    """Sort key on module terms (component, exponents), term-over-position.

    Monomials are compared by the ring order first; equal monomials prefer
    the smaller component index.  With ``split=k`` the components below k
    form a dominant block: any term in components < k beats any term in
    components >= k (used for syzygy elimination).
    """
    ring_key = key_func(order)
    if split is None:
        def key(t):
            c, e = t
            return (ring_key(e), -c)
    else:
        def key(t):
            c, e = t
            return (1 if c < split else 0, ring_key(e), -c)
    return key


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent tuple of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)
