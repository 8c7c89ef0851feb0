# ssspx/utils/errors.py
"""
Exception hierarchy shared by the solver, the harness and the CLI.
"""
from typing import Optional


class SsspxError(ValueError):
    """Base class for every error raised on purpose by ssspx."""


class GraphError(SsspxError):
    def __init__(self, message: str, edge_index: Optional[int] = None):
        super().__init__(message)
        self.edge_index = edge_index


class NegativeWeight(GraphError):
    pass


class NonFiniteWeight(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class InvalidDelta(SsspxError):
    pass


class InvalidParameter(SsspxError):
    pass


class MergePreconditionViolated(SsspxError):
    pass


class InvalidSize(SsspxError):
    pass


class SourceOutOfRange(SsspxError):
    pass


class InfeasibleSpec(SsspxError):
    pass


class ParseError(SsspxError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
