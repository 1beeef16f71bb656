"""A line-oriented text format for finite DCOs and data over them.

Example::

    dco two_point_c0
    carrier 0 1
    fn id 0->0 1->1
    fn c0 0->0 1->0
    identity id
    cartesian
      top 0
      meet 0,0->0 0,1->0 1,0->0 1,1->0
      lambda c0
      rho c0
    end
    predicate phi a->0 b->1
    object X a->0 b->1
    morphism f X X a->a b->a realizer c0

``#`` starts a comment.  Atoms made of digits are read as integers, so the
shipped files describe the same DCOs as :func:`~realizability.dco.catalog`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .dco import CartesianStructure, FiniteDco, FunctionalCompleteness, Graph, identity_graph
from .fam import Predicate
from .pasm import PAsmMor, PAsmObj


class DcoFileError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class DcoDocument:
    dco: FiniteDco
    cs: CartesianStructure | None = None
    fc: FunctionalCompleteness | None = None
    identity_name: str = "id"
    predicates: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    tilde: dict = field(default_factory=dict)  # member name -> member name
    universal: str | None = None


def _atom(text: str):
    return int(text) if text.isdigit() else text


def _show(atom) -> str:
    return str(atom)


class _Line:
    def __init__(self, number: int, raw: str):
        self.number = number
        self.raw = raw
        self.words: list[tuple[str, int]] = []
        body = raw.split("#", 1)[0]
        col = 0
        for part in body.split():
            col = body.index(part, col)
            self.words.append((part, col + 1))
            col += len(part)

    def error(self, message: str, word: int = 0) -> DcoFileError:
        column = self.words[word][1] if word < len(self.words) else len(self.raw) + 1
        return DcoFileError(message, self.number, column)


def _arrow_pairs(line: _Line, start: int, key=_atom, value=_atom) -> list[tuple]:
    out = []
    for k in range(start, len(line.words)):
        word = line.words[k][0]
        if "->" not in word:
            raise line.error(f"expected a pair a->b, got {word!r}", k)
        left, right = word.split("->", 1)
        if not left or not right:
            raise line.error(f"incomplete pair {word!r}", k)
        out.append((key(left), value(right), k))
    return out


def parse_dco(text: str) -> DcoDocument:
    lines = [_Line(n, raw) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [ln for ln in lines if ln.words]
    name, carrier, members, identity_name = "", None, {}, None
    cart: dict | None = None
    doc_extra = {"predicates": {}, "objects": {}, "morphisms": {}, "tilde": {}, "universal": None}
    pending_morphisms = []

    def need_carrier(line, k):
        if carrier is None:
            raise line.error("carrier must be declared first", 0)

    def in_carrier(line, atom, k):
        if atom not in carrier_set:
            raise line.error(f"unknown atom {_show(atom)!r}", k)

    def member(line, word_index):
        word = line.words[word_index][0]
        if word not in members:
            raise line.error(f"unknown function {word!r}", word_index)
        return members[word]

    carrier_set: set = set()
    it = iter(lines)
    for line in it:
        head = line.words[0][0]
        args = [w for w, _ in line.words[1:]]
        if head == "dco":
            if len(args) != 1:
                raise line.error("dco takes one name", 0)
            name = args[0]
        elif head == "carrier":
            carrier = [_atom(a) for a in args]
            if len(set(carrier)) != len(carrier):
                raise line.error("repeated atom in carrier", 0)
            carrier_set = set(carrier)
        elif head == "fn":
            need_carrier(line, 0)
            if not args:
                raise line.error("fn needs a name", 0)
            fname = args[0]
            if fname in members:
                raise line.error(f"function {fname!r} declared twice", 1)
            seen = {}
            for x, y, k in _arrow_pairs(line, 2):
                in_carrier(line, x, k)
                in_carrier(line, y, k)
                if x in seen and seen[x] != y:
                    raise line.error(f"function {fname!r} is not functional at {_show(x)!r}", k)
                seen[x] = y
            members[fname] = Graph.of(seen, fname)
        elif head == "identity":
            if len(args) != 1:
                raise line.error("identity takes one function name", 0)
            g = member(line, 1)
            if g != identity_graph(carrier):
                raise line.error(f"function {args[0]!r} is not the identity", 1)
            identity_name = args[0]
        elif head == "cartesian":
            need_carrier(line, 0)
            cart = {"table": {}}
            for inner in it:
                ihead = inner.words[0][0]
                if ihead == "end":
                    break
                if ihead == "top":
                    if len(inner.words) != 2:
                        raise inner.error("top takes one atom", 0)
                    cart["top"] = _atom(inner.words[1][0])
                    in_carrier(inner, cart["top"], 1)
                elif ihead == "meet":
                    for k in range(1, len(inner.words)):
                        word = inner.words[k][0]
                        try:
                            left, right = word.split("->")
                            a, b = left.split(",")
                        except ValueError:
                            raise inner.error(f"expected a,b->c, got {word!r}", k) from None
                        a, b, c = _atom(a), _atom(b), _atom(right)
                        for atom in (a, b, c):
                            in_carrier(inner, atom, k)
                        cart["table"][(a, b)] = c
                elif ihead in ("lambda", "rho"):
                    if len(inner.words) != 2:
                        raise inner.error(f"{ihead} takes one function name", 0)
                    cart[ihead] = member(inner, 1)
                else:
                    raise inner.error(f"unexpected {ihead!r} inside cartesian block", 0)
            else:
                raise line.error("cartesian block is not closed by 'end'", 0)
            for key in ("top", "lambda", "rho"):
                if key not in cart:
                    raise line.error(f"cartesian block lacks {key}", 0)
            missing = [(a, b) for a in carrier for b in carrier if (a, b) not in cart["table"]]
            if missing:
                raise line.error(f"meet table lacks {missing[0]}", 0)
        elif head == "universal":
            if len(args) != 1:
                raise line.error("universal takes one function name", 0)
            member(line, 1)
            doc_extra["universal"] = args[0]
        elif head == "tilde":
            for k in range(1, len(line.words)):
                word = line.words[k][0]
                if "->" not in word:
                    raise line.error(f"expected f->g, got {word!r}", k)
                a, b = word.split("->", 1)
                for fname in (a, b):
                    if fname not in members:
                        raise line.error(f"unknown function {fname!r}", k)
                doc_extra["tilde"][a] = b
        elif head in ("predicate", "object"):
            need_carrier(line, 0)
            if not args:
                raise line.error(f"{head} needs a name", 0)
            pairs = _arrow_pairs(line, 2, key=str)
            for _, y, k in pairs:
                in_carrier(line, y, k)
            index = tuple(x for x, _, _ in pairs)
            if len(set(index)) != len(index):
                raise line.error("repeated index", 0)
            values = tuple(y for _, y, _ in pairs)
            target = doc_extra["predicates"] if head == "predicate" else doc_extra["objects"]
            target[args[0]] = (Predicate if head == "predicate" else PAsmObj)(index, values)
        elif head == "morphism":
            pending_morphisms.append(line)
        else:
            raise line.error(f"unknown keyword {head!r}", 0)

    if carrier is None:
        raise DcoFileError("missing carrier declaration", len(text.splitlines()) or 1, 1)
    if identity_name is None:
        raise DcoFileError("missing identity declaration", len(text.splitlines()) or 1, 1)
    d = FiniteDco(carrier, list(members.values()), name=name)

    for line in pending_morphisms:
        words = [w for w, _ in line.words]
        if len(words) < 4 or "realizer" not in words:
            raise line.error("morphism NAME SOURCE TARGET pairs... realizer FN", 0)
        cut = words.index("realizer")
        if cut != len(words) - 2:
            raise line.error("realizer must name exactly one function at the end", cut)
        objs = doc_extra["objects"]
        for k in (2, 3):
            if words[k] not in objs:
                raise line.error(f"unknown object {words[k]!r}", k)
        X, Y = objs[words[2]], objs[words[3]]
        fn = {}
        for k in range(4, cut):
            word = words[k]
            if "->" not in word:
                raise line.error(f"expected i->j, got {word!r}", k)
            i, j = word.split("->", 1)
            if i not in X.index:
                raise line.error(f"{i!r} is not an index of {words[2]}", k)
            if j not in Y.index:
                raise line.error(f"{j!r} is not an index of {words[3]}", k)
            if fn.setdefault(i, j) != j:
                raise line.error(f"morphism {words[1]!r} is not functional at {i!r}", k)
        if set(fn) != set(X.index):
            raise line.error(f"morphism {words[1]!r} is not total", 0)
        r = member(line, cut + 1)
        doc_extra["morphisms"][words[1]] = PAsmMor(X, Y, tuple(fn[i] for i in X.index), r)

    cs = None
    if cart is not None:
        cs = CartesianStructure.from_table(cart["top"], cart["table"], cart["lambda"], cart["rho"])
    fc = None
    if doc_extra["universal"] is not None:
        table = {members[a]: members[b] for a, b in doc_extra["tilde"].items()}
        fc = FunctionalCompleteness.from_table(members[doc_extra["universal"]], table)
    return DcoDocument(d, cs, fc, identity_name, doc_extra["predicates"], doc_extra["objects"],
                       doc_extra["morphisms"], doc_extra["tilde"], doc_extra["universal"])


def load_dco(path) -> DcoDocument:
    return parse_dco(Path(path).read_text(encoding="utf-8"))


def _pairs(mapping_items) -> str:
    return " ".join(f"{_show(a)}->{_show(b)}" for a, b in mapping_items)


def dump_dco(doc: DcoDocument) -> str:
    d = doc.dco
    order = {a: k for k, a in enumerate(d.carrier)}
    lines = []
    if d.name:
        lines.append(f"dco {d.name}")
    lines.append("carrier " + " ".join(_show(a) for a in d.carrier))
    for g in d.family:
        items = sorted(g.pairs, key=lambda p: order[p[0]])
        lines.append(f"fn {g.name} {_pairs(items)}".rstrip())
    lines.append(f"identity {doc.identity_name}")
    if doc.cs is not None:
        cs = doc.cs
        lines.append("cartesian")
        lines.append(f"  top {_show(cs.top)}")
        meets = " ".join(f"{_show(a)},{_show(b)}->{_show(cs.table[(a, b)])}" for a in d.carrier for b in d.carrier)
        lines.append(f"  meet {meets}")
        lines.append(f"  lambda {cs.lam.name}")
        lines.append(f"  rho {cs.rho.name}")
        lines.append("end")
    if doc.universal is not None:
        lines.append(f"universal {doc.universal}")
        lines.append("tilde " + " ".join(f"{a}->{b}" for a, b in doc.tilde.items()))
    for name, p in doc.predicates.items():
        lines.append(f"predicate {name} {_pairs(zip(p.index, p.values))}".rstrip())
    for name, X in doc.objects.items():
        lines.append(f"object {name} {_pairs(zip(X.index, X.values))}".rstrip())
    names = {X: n for n, X in doc.objects.items()}
    for name, m in doc.morphisms.items():
        body = _pairs(zip(m.source.index, m.fn))
        lines.append(f"morphism {name} {names[m.source]} {names[m.target]} {body} realizer {m.realizer.name}")
    return "\n".join(lines) + "\n"


def normalize(text: str) -> str:
    """Drop comments and blank lines and collapse runs of whitespace."""
    out = []
    for raw in text.splitlines():
        words = raw.split("#", 1)[0].split()
        if words:
            out.append(" ".join(words))
    return "\n".join(out) + "\n"
