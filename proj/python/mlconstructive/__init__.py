"""TSP ML-Constructive: C++ core plus training-side helpers."""

from ._core import (  # noqa: F401
    ContractError,
    Error,
    Instance,
    MissingInputError,
    Network,
    ParseError,
    WeightError,
    candidate_lists,
    held_karp,
    promising_list,
    read_tour,
    render,
    solve,
    write_fixtures,
)
from .blob import read_blob, write_blob  # noqa: F401
