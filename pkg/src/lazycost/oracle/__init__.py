"""Reference semantics: call-by-need, clairvoyant call-by-value, pure."""
from .ccv import BOTTOM, Derivation, ccv_outcomes, eval_ccv, read_back
from .need import DemandUnsatisfiable, NeedResult, eval_need, read_back_need
from .pure import eval_pure

__all__ = [
    "BOTTOM", "Derivation", "DemandUnsatisfiable", "NeedResult", "ccv_outcomes", "eval_ccv",
    "eval_need", "eval_pure", "read_back", "read_back_need",
]
