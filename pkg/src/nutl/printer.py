"""Pretty printing in the input grammar (ASCII) or in mathematical notation."""

from .formula import And, FalseF, Lit, Mu, Next, Or, TrueF, Var, _Fix

_ASCII = {"and": " /\\ ", "or": " \\/ ", "not": "!", "next": "()",
          "mu": "mu ", "nu": "nu ", "true": "true", "false": "false"}
_UNI = {"and": " ∧ ", "or": " ∨ ", "not": "¬", "next": "○",
        "mu": "μ", "nu": "ν", "true": "true", "false": "false"}

_OR, _AND = 3, 4


def to_text(f, unicode=False) -> str:
    sym = _UNI if unicode else _ASCII
    out = []
    _emit(f, 0, sym, out)
    return "".join(out)


def _emit(f, prec, sym, out):
    if isinstance(f, TrueF):
        out.append(sym["true"])
    elif isinstance(f, FalseF):
        out.append(sym["false"])
    elif isinstance(f, Lit):
        out.append(f.prop if f.positive else sym["not"] + f.prop)
    elif isinstance(f, Var):
        out.append(f.name)
    elif isinstance(f, Next):
        out.append(sym["next"])
        _emit(f.body, _AND + 1, sym, out)
    elif isinstance(f, (And, Or)):
        p = _AND if isinstance(f, And) else _OR
        wrap = p < prec
        if wrap:
            out.append("(")
        # operators are right associative, so only a nested left operand
        # of the same kind needs parentheses
        _emit(f.left, p + 1, sym, out)
        out.append(sym["and"] if p == _AND else sym["or"])
        _emit(f.right, p, sym, out)
        if wrap:
            out.append(")")
    elif isinstance(f, _Fix):
        # the body is always parenthesized, which delimits the binder
        out.append(sym["mu"] if isinstance(f, Mu) else sym["nu"])
        out.append(f.var)
        out.append(".(")
        _emit(f.body, 0, sym, out)
        out.append(")")
    else:
        raise TypeError(f"not a formula: {f!r}")
