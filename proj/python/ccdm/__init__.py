"""Constant-composition distribution matching via arithmetic coding.

Maps fixed-length uniform bit blocks invertibly to fixed-length symbol
blocks of a prescribed composition, with exact rate and divergence
analysis of the resulting matcher.
"""

from ._ccdm import (
    CodeParams,
    Composition,
    CompositionMismatch,
    Distribution,
    Exhausted,
    FormatError,
    IndexOutOfRange,
    IntervalState,
    IoFailure,
    LengthMismatch,
    NotACodeword,
    SourceModel,
    StreamDecoder,
    StreamEncoder,
    SupportViolation,
    SweepRecord,
    TooLarge,
    ZeroProbability,
    codebook,
    decode_stream,
    empirical_divergence,
    encode_stream,
    entropy,
    input_length,
    kl_divergence,
    normalized_divergence,
    parse_distribution,
    preset_grid,
    quantization_gap_bound,
    quantize_to_ntype,
    rank,
    rate_lower_bound,
    ref_decode,
    ref_encode,
    report_csv,
    report_json,
    sweep,
    type_class_size,
    unrank,
)

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "Composition",
    "CompositionMismatch",
    "Distribution",
    "Exhausted",
    "FormatError",
    "IndexOutOfRange",
    "IntervalState",
    "IoFailure",
    "LengthMismatch",
    "NotACodeword",
    "SourceModel",
    "StreamDecoder",
    "StreamEncoder",
    "SupportViolation",
    "SweepRecord",
    "TooLarge",
    "ZeroProbability",
    "codebook",
    "decode_stream",
    "empirical_divergence",
    "encode_stream",
    "entropy",
    "input_length",
    "kl_divergence",
    "normalized_divergence",
    "parse_distribution",
    "preset_grid",
    "quantization_gap_bound",
    "quantize_to_ntype",
    "rank",
    "rate_lower_bound",
    "ref_decode",
    "ref_encode",
    "report_csv",
    "report_json",
    "sweep",
    "type_class_size",
    "unrank",
]
