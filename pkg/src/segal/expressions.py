from typing import Mapping, NamedTuple

import lark

from segal.core import MalformedInputError, SimplicialIndexError
from segal.simplicial import operators as ops
from segal.simplicial.sset import SimplexRef, SimplicialSet, generator_name, word_simplex

OPERATOR_GRAMMAR = r"""
    ?start: word

    word: operator* GENERATOR

    operator: OPERATOR

    OPERATOR: /[ds][0-9]+/
    GENERATOR: /(?![ds][0-9])[A-Za-z_*(][A-Za-z0-9_.,*()^\/-]*/

    %import common.WS

    %ignore WS
"""


_parser = lark.Lark(OPERATOR_GRAMMAR, parser="lalr")


class OperatorWord(NamedTuple):
    """An operator word such as `d3 s1 x`; the rightmost operator acts first."""

    operators: tuple[tuple[str, int], ...]
    generator: str

    def __str__(self) -> str:
        return " ".join([f"{kind}{index}" for kind, index in self.operators] + [self.generator])

    @property
    def is_degeneracy(self) -> bool:
        return all(kind == "s" for kind, _ in self.operators)


@lark.v_args(inline=True)
class WordTransformer(lark.Transformer):
    def operator(self, token: lark.Token) -> tuple[str, int]:
        return (token[0], int(token[1:]))

    def word(self, *parts: tuple[str, int] | lark.Token) -> OperatorWord:
        *operators, generator = parts
        return OperatorWord(tuple(operators), str(generator))  # type: ignore[arg-type]


def parse_word(text: str) -> OperatorWord:
    """Parse an operator word.

    >>> parse_word("d3 s1 x")
    OperatorWord(operators=(('d', 3), ('s', 1)), generator='x')
    >>> str(parse_word("s0s0x"))
    's0 s0 x'
    """

    try:
        return WordTransformer().transform(_parser.parse(text))
    except lark.exceptions.LarkError as ex:
        raise MalformedInputError(f"Invalid operator word '{text}': {ex}") from ex


def minimal_dimension(word: OperatorWord) -> int:
    """The least dimension of the generator on which every operator is defined."""

    n = 0
    while True:
        try:
            ops.operator_from_word(list(word.operators), n)
            return n
        except SimplicialIndexError:
            n += 1


def normalize(text: str, dim: int | None = None) -> ops.NormalForm:
    """Rewrite an operator word into the form s_J d_I x.

    >>> str(normalize("d3 s1 x"))
    's1 d2 x'
    >>> str(normalize("s0 s0 x"))
    's1 s0 x'
    >>> str(normalize("d1 s0 x"))
    'x'
    """

    word = parse_word(text)
    n = minimal_dimension(word) if dim is None else dim
    theta, _ = ops.operator_from_word(list(word.operators), n)
    return ops.normal_form(theta, n, word.generator)


def find_generator(X: SimplicialSet, name: str) -> SimplexRef:
    for gens in X.generators:
        for g in gens:
            if generator_name(g) == name:
                return X.ref(g)
    raise MalformedInputError(f"{X.name} has no generator named '{name}'")


def evaluate(text: str, X: SimplicialSet) -> SimplexRef:
    """The simplex an operator word names in X."""

    word = parse_word(text)
    ref = find_generator(X, word.generator)
    ops.operator_from_word(list(word.operators), ref.dim)
    return word_simplex(X, ref, list(word.operators))


def parse_ref(text: str, dims: Mapping[str, int]) -> SimplexRef:
    """A degenerate simplex written as `s1 s0 v`, given generator dimensions."""

    word = parse_word(text)
    if not word.is_degeneracy:
        raise MalformedInputError(f"'{text}' applies face operators; only degeneracies are allowed here")
    if word.generator not in dims:
        raise MalformedInputError(f"Unknown generator '{word.generator}' in '{text}'")
    n = dims[word.generator]
    theta, dim = ops.operator_from_word(list(word.operators), n)
    return SimplexRef(word.generator, ops.word_from_surjection(theta), dim)
