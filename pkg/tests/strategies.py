from fractions import Fraction

from hypothesis import strategies as st

from qplane.parser import Node

_scalar_leaves = st.one_of(
    st.sampled_from([Node("q"), Node("qinv")]),
    st.builds(lambda a, b: Node("num", value=Fraction(a, b)), st.integers(0, 9), st.integers(1, 4)),
)
_leaves = st.one_of(st.sampled_from([Node("x"), Node("y")]), _scalar_leaves)


def _scalar_tree(children):
    return st.one_of(
        st.builds(lambda a: Node("neg", (a,)), children),
        st.builds(lambda a, b: Node("add", (a, b)), children, children),
        st.builds(lambda a, b: Node("mul", (a, b)), children, children),
        st.builds(lambda a, k: Node("pow", (a,), value=k), children, st.integers(0, 3)),
    )


scalars = st.recursive(_scalar_leaves, _scalar_tree, max_leaves=4)


def _tree(children):
    return st.one_of(
        st.builds(lambda a: Node("neg", (a,)), children),
        st.builds(lambda a, b: Node("add", (a, b)), children, children),
        st.builds(lambda a, b: Node("sub", (a, b)), children, children),
        st.builds(lambda a, b: Node("mul", (a, b)), children, children),
        st.builds(lambda a, b: Node("div", (a, b)), children, scalars),
        st.builds(lambda a, k: Node("pow", (a,), value=k), children, st.integers(0, 3)),
        # multiplying by a generator guarantees a zero constant term
        st.builds(lambda a, g: Node("expq", (Node("mul", (a, Node(g))),)), children, st.sampled_from("xy")),
    )


expressions = st.recursive(_leaves, _tree, max_leaves=8)
