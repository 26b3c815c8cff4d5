"""Multimedia description toolkit: parse, validate, index and search MDF files."""

from ._core import (
    Document,
    Index,
    MdfError,
    ParseError,
    Schemas,
    load_schemas,
    normalize,
    parse_index,
    parse_mdf,
    parse_query,
    read_index,
    retrieve,
    run_cli,
    timecode_frames,
    timecode_sub,
)

__all__ = [
    "Document",
    "Index",
    "MdfError",
    "ParseError",
    "Schemas",
    "load_schemas",
    "normalize",
    "parse_index",
    "parse_mdf",
    "parse_query",
    "read_index",
    "retrieve",
    "run_cli",
    "timecode_frames",
    "timecode_sub",
]
