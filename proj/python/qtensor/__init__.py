from ._qtensor import (
    InputError,
    LimitExceeded,
    analyze,
    bacon_bound,
    class2_generators,
    cyclic_tensor,
    export_presentation,
    free_tensor,
    freenil2_structure,
    freenil_tensor,
    verify,
    witt_rank,
)

__all__ = [
    "InputError",
    "LimitExceeded",
    "analyze",
    "bacon_bound",
    "class2_generators",
    "cyclic_tensor",
    "export_presentation",
    "free_tensor",
    "freenil2_structure",
    "freenil_tensor",
    "verify",
    "witt_rank",
]
