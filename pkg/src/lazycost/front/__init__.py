"""Surface language: parsing, type checking, A-normalization."""
from .anf import alpha_eq, inline_lets, is_anf, subst, to_anf, to_anf_program
from .parser import ParseError, parse, parse_expr, parse_type
from .pretty import show_program, show_term
from .syntax import (
    NAT_T, UNIT_T, Ann, App, Arrow, ConsE, Def, DefRef, FoldrE, Lam, Let, List, Nat, NatCase,
    NatLit, NilE, SurfaceProgram, Term, Ty, Unit, UnitE, Var, arrows,
)
from .typecheck import TypeCheckError, infer_type, is_first_order, typecheck


def load(text: str, name: str = "main") -> SurfaceProgram:
    """Parse, type check and A-normalize."""
    p = parse(text, name)
    typecheck(p)
    return to_anf_program(p)


__all__ = [
    "NAT_T", "UNIT_T", "Ann", "App", "Arrow", "ConsE", "Def", "DefRef", "FoldrE", "Lam", "Let",
    "List", "Nat", "NatCase", "NatLit", "NilE", "ParseError", "SurfaceProgram", "Term", "Ty",
    "TypeCheckError", "Unit", "UnitE", "Var", "alpha_eq", "arrows", "infer_type", "inline_lets",
    "is_anf", "is_first_order", "load", "parse", "parse_expr", "parse_type", "show_program",
    "show_term", "subst", "to_anf", "to_anf_program", "typecheck",
]
