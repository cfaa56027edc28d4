"""
Data models for the Vandermonde approximation toolkit.
"""

from ..scalar import Backend
from .matrix import NodeVector, Permutation, SquareMatrix
from .polynomial import DegreeProbeResult, EffectiveDegree, FitReport, Polynomial, SampleSet
from .partition import DomainMap, DyadicPartition
from .reports import (
    ConvergenceReport,
    CrossCheck,
    DeterminantReport,
    ExampleRun,
    LevelRecord,
    ReferenceSeries,
    TableFlag,
    TaylorComparison,
    TaylorRow,
)
from .configuration import (
    AnalysisConfig,
    AppConfiguration,
    LoggingConfig,
    NumericsConfig,
    OutputConfig,
    RunConfig,
)

__all__ = [
    'Backend',
    'SquareMatrix',
    'NodeVector',
    'Permutation',
    'Polynomial',
    'SampleSet',
    'EffectiveDegree',
    'FitReport',
    'DegreeProbeResult',
    'DyadicPartition',
    'DomainMap',
    'DeterminantReport',
    'LevelRecord',
    'ConvergenceReport',
    'ReferenceSeries',
    'TaylorRow',
    'TableFlag',
    'TaylorComparison',
    'CrossCheck',
    'ExampleRun',
    'NumericsConfig',
    'AnalysisConfig',
    'OutputConfig',
    'LoggingConfig',
    'AppConfiguration',
    'RunConfig',
]
