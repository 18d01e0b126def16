"""Hypothesis strategies for random models and expressions."""

from hypothesis import strategies as st

from fmlkit.syntax import (
    And,
    Arith,
    AttributeDecl,
    AttributeRef,
    Cardinality,
    Compare,
    FeatureModelAst,
    FeatureNode,
    FeatureRef,
    Group,
    GroupKind,
    Implies,
    KEYWORDS,
    Literal,
    LiteralKind,
    Not,
    Or,
    Symbol,
)

identifiers = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True).filter(
    lambda s: s not in KEYWORDS
)

literals = st.one_of(
    st.integers(-1000, 1000).map(lambda v: Literal(v, LiteralKind.INT)),
    st.floats(allow_nan=False, allow_infinity=False, width=32).map(
        lambda v: Literal(float(v), LiteralKind.FLOAT)
    ),
    st.text(st.characters(blacklist_characters='"\\', blacklist_categories=("Cs",)), max_size=6).map(
        lambda v: Literal(v, LiteralKind.STRING)
    ),
    st.booleans().map(lambda v: Literal(v, LiteralKind.BOOL)),
)

attribute_values = st.one_of(literals, identifiers.map(lambda s: Literal(Symbol(s), LiteralKind.SYMBOL)))

atoms = st.one_of(
    identifiers.map(FeatureRef),
    st.tuples(identifiers, identifiers).map(lambda t: AttributeRef(*t)),
    literals,
)


def _extend(children):
    binary = st.tuples(children, children)
    return st.one_of(
        children.map(Not),
        binary.map(lambda t: And(*t)),
        binary.map(lambda t: Or(*t)),
        binary.map(lambda t: Implies(*t)),
        st.tuples(st.sampled_from(["==", "!=", "<", "<=", ">", ">="]), children, children).map(
            lambda t: Compare(*t)
        ),
        st.tuples(st.sampled_from(["+", "-", "*", "/"]), children, children).map(
            lambda t: Arith(*t)
        ),
    )


expressions = st.recursive(atoms, _extend, max_leaves=12)

cardinalities = st.tuples(st.integers(0, 4), st.integers(0, 4)).map(lambda t: Cardinality(*t))


@st.composite
def feature_trees(draw, max_features=10):
    names = draw(st.lists(identifiers, min_size=1, max_size=max_features, unique=True))
    it = iter(names)

    def build(name, budget):
        attrs = draw(
            st.lists(st.tuples(identifiers, attribute_values), max_size=2, unique_by=lambda t: t[0])
        )
        attrs = tuple(AttributeDecl(n, v) for n, v in attrs)
        card = draw(cardinalities)
        children = []
        n_children = draw(st.integers(0, 3)) if budget else 0
        for _ in range(n_children):
            child = next(it, None)
            if child is None:
                break
            children.append(build(child, budget - 1))
        group = Group(draw(st.sampled_from(list(GroupKind))), tuple(children)) if children else None
        return FeatureNode(name, card, attrs, group)

    return build(next(it), 3)


@st.composite
def models(draw):
    root = draw(feature_trees())
    constraints = draw(st.lists(expressions, max_size=4))
    return FeatureModelAst(draw(identifiers), root, tuple(constraints))
