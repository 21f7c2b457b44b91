#!/usr/bin/env python3
"""
AlgInt Certify - Instance Kind Resolution Module
Maps instance kinds to their CLI subcommand, the criterion they check and a
short narrative used by `explain`.
"""

import logging
from typing import Dict, List, Optional, Tuple

from modules.errors import SchemaError

logger = logging.getLogger(__name__)


class KindResolver:
    """
    Instance kind resolver
    Resolves an instance kind (the "kind" field of an instance file) to the rule
    describing how it is run and explained
    """

    def __init__(self):
        self.rules: Dict[str, Dict[str, str]] = {
            "field-check": {
                "subcommand": "check-field",
                "criterion": "defining polynomial is monic, squarefree and irreducible",
                "summary": "Validates the defining polynomial of the ambient field",
            },
            "trace-window": {
                "subcommand": "certify trace",
                "criterion": "integral power traces over an explicit window",
                "summary": "If q*Tr(lambda*alpha^j) is an integer for every j up to the window bound, "
                           "alpha is an algebraic integer",
            },
            "k2": {
                "subcommand": "certify k2",
                "criterion": "two-term power sums integral up to an explicit constant",
                "summary": "If lambda1*alpha1^i + lambda2*alpha2^i is integral for i = 1..C, "
                           "both alphas are algebraic integers",
            },
            "powersum": {
                "subcommand": "scan powersum",
                "criterion": "generalized power sums integral on infinitely many n, checked class by class",
                "summary": "Either a class of roots with root-of-unity ratios vanishes on a residue class, "
                           "or its members are algebraic integers",
            },
            "classes": {
                "subcommand": "classes",
                "criterion": "partition by root-of-unity ratios",
                "summary": "Groups the roots whose ratios are roots of unity and reports the twist exponents",
            },
            "subsum": {
                "subcommand": "subsum",
                "criterion": "no proper subsum vanishes under the trace for any residue",
                "summary": "Lists every proper subsum whose trace vanishes",
            },
            "groupring": {
                "subcommand": "groupring",
                "criterion": "group-ring element evaluated at powers of alpha",
                "summary": "Evaluates sum lambda_i*sigma_i(alpha)^n with verified automorphisms",
            },
            "dio": {
                "subcommand": "dio",
                "criterion": "finitely many n with a prescribed rational trace",
                "summary": "Enumerates the n in the window with Tr(sum lambda_i*alpha_i^n) equal to the target",
            },
            "fatou": {
                "subcommand": "fatou",
                "criterion": "Fatou: integral coprime g/h with h(0) = 1",
                "summary": "A rational function with integral series coefficients has integral numerator "
                           "and denominator; a non-integral coefficient is a witness",
            },
            "ratfunc": {
                "subcommand": "ratfunc",
                "criterion": "sum of lambda_i*f_i^n is an integral polynomial",
                "summary": "Builds sum lambda_i*f_i^n and checks whether it is a polynomial with integral coefficients",
            },
            "polyvalue": {
                "subcommand": "scan polyvalue",
                "criterion": "P evaluated at powers of the roots",
                "summary": "Scans P(alpha_1^n, ..., alpha_k^n) next to the monomial condition on each axis",
            },
            "tracepoly": {
                "subcommand": "scan tracepoly",
                "criterion": "term-wise traces of a polynomial in alpha^n",
                "summary": "Reports the terms of P(alpha^n) whose trace vanishes",
            },
        }

    def resolve(self, kind: str) -> Dict[str, str]:
        """
        Resolve a kind to its rule

        Args:
            kind: Instance kind

        Returns:
            Rule dictionary including the kind itself
        """
        rule = self.rules.get(kind)
        if rule is None:
            raise SchemaError(f"Unknown instance kind {kind!r}; expected one of {', '.join(self.kinds())}")
        return {"kind": kind, **rule}

    def subcommand_kinds(self) -> Dict[Tuple[str, Optional[str]], str]:
        """Map (command, subcommand) pairs, subcommand None for flat commands, to the kind they run"""
        table: Dict[Tuple[str, Optional[str]], str] = {}
        for kind, rule in self.rules.items():
            command, _, sub = rule["subcommand"].partition(" ")
            table[(command, sub or None)] = kind
        return table

    def kinds(self) -> List[str]:
        return sorted(self.rules)
