"""Decision procedures for the linear-time mu-calculus."""

from .errors import (
    BudgetExceeded, KripkeError, NutlError, ParseError, SoundnessError,
    UnguardedError,
)
from .formula import FALSE, TRUE, And, Formula, Lit, Mu, Next, Nu, Or, Var
from .lasso import LassoWord, enumerate_lassos, eval_lasso, parse_lasso
from .parser import parse
from .printer import to_text
from .transforms import (
    canonical_names, closure, dependencies, guard_transform, is_guarded,
    negate, push_next, substitute,
)

__version__ = "0.1.0"
