"""Reference implementations used as test oracles.

They are deliberately naive and share no code with the package.
"""

import itertools


class OutOfFuel(Exception):
    pass


def innermost_normal_form(t, fuel=2000):
    """Applicative-order reduction of an S/K/I term; by confluence its result,
    when it has one, is the normal form."""
    budget = [fuel]

    def spend():
        budget[0] -= 1
        if budget[0] < 0:
            raise OutOfFuel

    def nf(t):
        if not isinstance(t, tuple):
            return t
        return apply(nf(t[0]), nf(t[1]))

    def apply(f, x):
        # f and x are normal
        args, head = [], f
        while isinstance(head, tuple):
            args.append(head[1])
            head = head[0]
        args.reverse()
        args.append(x)
        if head == "I":
            spend()
            return rebuild(x, args[1:])
        if head == "K" and len(args) == 2:
            spend()
            return args[0]
        if head == "S" and len(args) == 3:
            spend()
            a, b, c = args
            return apply(apply(a, c), apply(b, c))
        return (f, x)

    def rebuild(h, rest):
        for a in rest:
            h = apply(h, a)
        return h

    return nf(t)


def all_partial_functions(carrier):
    for choice in itertools.product([None, *carrier], repeat=len(carrier)):
        yield {x: y for x, y in zip(carrier, choice) if y is not None}


def saturated(members, g):
    """``g`` is contained in some member (all graphs as dicts)."""
    return any(all(m.get(x) == y for x, y in g.items()) for m in members)


def realizer_exists(members, pairs):
    return any(all(m.get(x) == y for x, y in pairs) for m in members)


def functions(domain, codomain):
    for values in itertools.product(codomain, repeat=len(domain)):
        yield dict(zip(domain, values))


def has_redex(t):
    """Structural search for a K, S or I redex anywhere in ``t``."""
    if not isinstance(t, tuple):
        return False
    spine, head = [], t
    while isinstance(head, tuple):
        spine.append(head[1])
        head = head[0]
    if (head == "K" and len(spine) >= 2) or (head == "S" and len(spine) >= 3) or (head == "I" and spine):
        return True
    return any(has_redex(a) for a in spine)
