"""Pattern knowledge bases analysed by compression-driven multiple alignment."""
from .alignment import (Alignment, Candidate, Column, SearchParams,
                        build_alignments, merge, projection,
                        validate_alignment)
from .codec import (Code, Completion, DecodeResult, EncodeResult,
                    Recognition, complete, decode, encode, recognize)
from .errors import (AlignmentError, ConfigurationError, KBSyntaxError,
                     KBValidationError, SPError)
from .msa import matched_pair_score, msa
from .pairwise import MatchSet, align_pairwise, score_matchset
from .patterns import (CostModel, KnowledgeBase, Pattern, Role, Symbol,
                       SymbolClass, derive_costs, dump_kb, load_kb)
from .render import RenderedAlignment, render
from .scoring import ScoreBreakdown, compression_difference, \
    relative_probabilities

__version__ = "0.1.0"

__all__ = [
    "Alignment", "Candidate", "Column", "SearchParams", "build_alignments",
    "merge", "projection", "validate_alignment", "Code", "Completion",
    "DecodeResult", "EncodeResult", "Recognition", "complete", "decode",
    "encode", "recognize", "AlignmentError", "ConfigurationError",
    "KBSyntaxError", "KBValidationError", "SPError", "matched_pair_score",
    "msa", "MatchSet", "align_pairwise", "score_matchset", "CostModel",
    "KnowledgeBase", "Pattern", "Role", "Symbol", "SymbolClass",
    "derive_costs", "dump_kb", "load_kb", "RenderedAlignment", "render",
    "ScoreBreakdown", "compression_difference", "relative_probabilities",
]
