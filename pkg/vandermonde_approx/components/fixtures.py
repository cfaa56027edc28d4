"""
Named node sets and printed reference values.

Printed values are kept as the exact strings that appear in print, so a
comparison can tell how many decimals were shown.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from ..errors import ConfigurationError, UnknownFixtureError
from ..models import NodeVector
from ..scalar import Backend, parse_scalar
from .grid import uniform_partition

TAYLOR_DEGREES = (4, 6, 8, 10)

_ABS_NODES = (
    "-1", "-.96", "-.92", "-.88", "-.84", "-.8", "-.6", "-.4", "-.2", "0",
    ".2", ".4", ".6", ".8", ".84", ".88", ".92", ".98", "1",
)


@dataclass(frozen=True)
class NodeFixture:
    """
    A node set addressable by id.

    Attributes:
        fixture_id: Id used on the command line
        build: Returns the nodes on the fixture's native backend
        irrational: Nodes involve pi, so only the float backend is legal
        description: One-line summary
    """

    fixture_id: str
    build: Callable[[], NodeVector]
    irrational: bool
    description: str


def _decimal_nodes(texts: Tuple[str, ...]) -> NodeVector:
    return NodeVector(tuple(parse_scalar(text, Backend.EXACT) for text in texts), Backend.EXACT)


def _unit_nodes(count: int) -> NodeVector:
    return NodeVector(tuple(Fraction(j, count) for j in range(count + 1)), Backend.EXACT)


def _build_registry() -> Dict[str, NodeFixture]:
    registry = {
        'ex2.6-nodes': NodeFixture(
            'ex2.6-nodes', lambda: _decimal_nodes(_ABS_NODES), False,
            "19 nodes on [-1, 1] for the |x| fit, as printed (x_18 = .98)",
        ),
        'ex2.6-nodes-symmetric': NodeFixture(
            'ex2.6-nodes-symmetric',
            lambda: _decimal_nodes(tuple(".96" if text == ".98" else text for text in _ABS_NODES)),
            False,
            "19 nodes on [-1, 1] for the |x| fit, closed under negation",
        ),
        'ex2.7-n6': NodeFixture('ex2.7-n6', lambda: _unit_nodes(6), False, "j/6 for j = 0..6"),
        'ex2.7-n8': NodeFixture('ex2.7-n8', lambda: _unit_nodes(8), False, "j/8 for j = 0..8"),
    }
    for degree in TAYLOR_DEGREES:
        registry[f'pi-partition-{degree}'] = NodeFixture(
            f'pi-partition-{degree}',
            lambda n=degree: uniform_partition(-math.pi, math.pi, n),
            True,
            f"{degree + 1} uniform nodes on [-pi, pi]",
        )
        registry[f'ln-partition-{degree}'] = NodeFixture(
            f'ln-partition-{degree}',
            lambda n=degree: uniform_partition(Fraction(-3, 4), Fraction(3, 4), n),
            False,
            f"{degree + 1} uniform nodes on [-3/4, 3/4]",
        )
    return registry


NODE_FIXTURES: Dict[str, NodeFixture] = _build_registry()


def fixture(fixture_id: str) -> NodeFixture:
    try:
        return NODE_FIXTURES[fixture_id]
    except KeyError:
        raise UnknownFixtureError(fixture_id, tuple(NODE_FIXTURES)) from None


def named_nodes(fixture_id: str, backend: Optional[Backend] = None) -> NodeVector:
    """
    Nodes of a named fixture, optionally converted to the float backend.

    Raises:
        UnknownFixtureError: For an unknown id
        ConfigurationError: If exact nodes are requested from an irrational fixture
    """
    entry = fixture(fixture_id)
    if backend is Backend.EXACT and entry.irrational:
        raise ConfigurationError(f"Fixture '{fixture_id}' has irrational nodes; use the float backend")
    nodes = entry.build()
    if backend is Backend.FLOAT:
        return nodes.to_float()
    return nodes


@dataclass(frozen=True)
class PrintedTable:
    """
    A printed Taylor comparison table.

    rows maps a row label ("reference" or "P<n>") to {power: printed text};
    "-" marks a power above the row's degree.
    """

    function_id: str
    powers: Tuple[int, ...]
    rows: Dict[str, Dict[int, str]]
    known_flags: FrozenSet[Tuple[str, int]]


def _table(function_id: str, powers: Tuple[int, ...], rows: Dict[str, Tuple[str, ...]],
           known_flags: FrozenSet[Tuple[str, int]]) -> PrintedTable:
    return PrintedTable(
        function_id=function_id,
        powers=powers,
        rows={label: dict(zip(powers, cells)) for label, cells in rows.items()},
        known_flags=known_flags,
    )


# Sine coefficients are printed as magnitudes.
SINE_TABLE = _table(
    'sine',
    (1, 3, 5, 7, 9),
    {
        'reference': ("1", "0.166666", "0.008333", "0.0001984", "0.00000275"),
        'P4': ("0.848826", "0.086040", "-", "-", "-"),
        'P6': ("0.992392", "0.157109", "0.005730", "-", "-"),
        'P8': ("0.999805", "0.166216", "0.008087", "0.0001529", "-"),
        'P10': ("0.999997", "0.166655", "0.008323", "0.0001948", "0.00000225"),
    },
    # 8/(3 pi^3) = 0.0860040..., printed with two digits swapped
    frozenset({('P4', 3)}),
)

LOG1P_TABLE = _table(
    'log1p',
    (1, 2, 3, 4, 5),
    {
        'reference': ("1", "-0.5", "0.333333", "-0.25", "0.02"),
        'P4': ("0.969277", "-0.453517", "0.583103", "-0.464548", "-"),
        'P6': ("1.003036", "-0.502726", "0.269673", "-0.192895", "0.450513"),
        'P8': ("0.999703", "-0.499727", "0.345072", "-0.260784", "0.096422"),
        'P10': ("1.000028", "-0.500026", "0.331491", "-0.248281", "0.228492"),
    },
    # P4 k=2 computes to -0.473517; the k=5 series coefficient is 1/5
    frozenset({('P4', 2), ('reference', 5)}),
)

PRINTED_TABLES: Dict[str, PrintedTable] = {'sine': SINE_TABLE, 'log1p': LOG1P_TABLE}


@dataclass(frozen=True)
class PrintedPolynomial:
    """Descending coefficients of a printed fit, with the powers known to be misprinted."""

    degree: int
    coefficients: Tuple[str, ...]
    known_flags: FrozenSet[int]
    tolerance: float = 5e-3


# Fits of g(y) = sin(2 pi y - pi) on j/n; constant terms are not printed (0).
SINE_UNIT_POLYNOMIALS: Dict[int, PrintedPolynomial] = {
    6: PrintedPolynomial(
        6,
        ("5.57e-11", "56.118", "-140.296", "101.324", "-11.691", "-5.456", "0"),
        frozenset(),
    ),
    8: PrintedPolynomial(
        8,
        ("-2.75e-12", "-59.143", "207", "-231.305", "60.764", "27.381", "-1.644", "-6.361", "0"),
        # the x^2 coefficient computes to +1.664
        frozenset({2}),
    ),
}


@dataclass(frozen=True)
class PrintedClosedForm:
    """
    A printed closed-form fit of sin on [-pi, pi].

    terms maps a power to (printed expression, its value evaluated exactly
    as printed); known_flags are the powers whose printed expression does
    not match the fit.
    """

    degree: int
    terms: Dict[int, Tuple[str, float]]
    known_flags: FrozenSet[int]


_PI = math.pi
_R2, _R3 = math.sqrt(2), math.sqrt(3)
_P5, _Q5 = math.sqrt(5 - math.sqrt(5)), math.sqrt(5 + math.sqrt(5))

SINE_CLOSED_FORMS: Dict[int, PrintedClosedForm] = {
    4: PrintedClosedForm(
        4,
        {
            3: ("-(-8)/(3 pi^3)", 8 / (3 * _PI ** 3)),
            1: ("8/(3 pi)", 8 / (3 * _PI)),
        },
        # the x^3 coefficient is -8/(3 pi^3)
        frozenset({3}),
    ),
    6: PrintedClosedForm(
        6,
        {
            5: ("81 sqrt(3)/(80 pi^5)", 81 * _R3 / (80 * _PI ** 5)),
            3: ("-45/(16 pi^3)", -45 / (16 * _PI ** 3)),
            1: ("9 sqrt(3)/(5/pi)", 9 * _R3 / (5 / _PI)),
        },
        # -45 sqrt(3)/(16 pi^3) and 9 sqrt(3)/(5 pi)
        frozenset({1, 3}),
    ),
    8: PrintedClosedForm(
        8,
        {
            7: ("-2048(-7 + 5 sqrt(2))/(315 pi^7)", -2048 * (-7 + 5 * _R2) / (315 * _PI ** 7)),
            5: ("128(-26 + 19 sqrt(2))/(45 pi^5)", 128 * (-26 + 19 * _R2) / (45 * _PI ** 5)),
            3: ("-8(-169 + 140 sqrt(2))/(45 pi^2)", -8 * (-169 + 140 * _R2) / (45 * _PI ** 2)),
            1: ("8(-21 + 44 sqrt(2))/(105 pi)", 8 * (-21 + 44 * _R2) / (105 * _PI)),
        },
        # pi^3 in the x^3 denominator
        frozenset({3}),
    ),
    10: PrintedClosedForm(
        10,
        {
            9: ("390625(34 p - 21 q)/(142152 sqrt(2) pi^9)",
                390625 * (34 * _P5 - 21 * _Q5) / (142152 * _R2 * _PI ** 9)),
            7: ("-15625(326 p - 201 q)/(24192 sqrt(2) pi^7)",
                -15625 * (326 * _P5 - 201 * _Q5) / (24192 * _R2 * _PI ** 7)),
            5: ("625(1786 p - 1089 q)/(6912 sqrt(2) pi^5)",
                625 * (1786 * _P5 - 1089 * _Q5) / (6912 * _R2 * _PI ** 5)),
            3: ("-25(67576 p - 37821 q)/(36288 sqrt(2) pi^3)",
                -25 * (67576 * _P5 - 37821 * _Q5) / (36288 * _R2 * _PI ** 3)),
            1: ("25(83 p - 18 q)/(504 sqrt(2) pi)",
                25 * (83 * _P5 - 18 * _Q5) / (504 * _R2 * _PI)),
        },
        # p = sqrt(5 - sqrt(5)), q = sqrt(5 + sqrt(5)); the x^9 denominator is 145152 sqrt(2) pi^9
        frozenset({9}),
    ),
}
