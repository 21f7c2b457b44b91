#!/usr/bin/env python3
"""
AlgInt Certify - Codec Module
Canonical JSON for certificates and instances, and the wire forms of rationals,
polynomials and field elements.
Canonical output is UTF-8 with sorted keys and no insignificant whitespace, so
identical inputs give byte-identical files.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

from modules.certificate import Certificate
from modules.errors import ParseError, RationalFormatError, SchemaError
from modules.exact_core import UniPoly, parse_rational
from modules.numfield import NFElement, NumberField

logger = logging.getLogger(__name__)


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path: str) -> Any:
    """
    Read a JSON document from disk

    Args:
        path: File path

    Returns:
        Decoded document
    """
    if not os.path.exists(path):
        raise ParseError(f"No such file: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"{path}: not UTF-8 text") from e


def parse_poly(data: Any) -> UniPoly:
    if not isinstance(data, list):
        raise SchemaError(f"Polynomial must be a coefficient array, got {type(data).__name__}")
    try:
        return UniPoly(parse_rational(str(c)) if not isinstance(c, int) else c for c in data)
    except RationalFormatError as e:
        raise SchemaError(e.message) from e


def parse_element(field: NumberField, data: Any) -> NFElement:
    """
    Decode an element given as {"coords": [...]} or as a bare rational

    Short coordinate lists are padded with zeros.
    """
    if isinstance(data, (str, int)) and not isinstance(data, bool):
        coords: List[Any] = [data]
    elif isinstance(data, dict) and isinstance(data.get("coords"), list):
        coords = data["coords"]
    else:
        raise SchemaError(f"Element must be {{'coords': [...]}} or a rational string, got {data!r}")
    if len(coords) > field.degree:
        raise SchemaError(f"Element has {len(coords)} coordinates in a field of degree {field.degree}")
    try:
        return field.element(parse_rational(c) if isinstance(c, str) else c for c in coords)
    except (RationalFormatError, TypeError) as e:
        raise SchemaError(f"Bad element coordinates {coords!r}: {e}") from e


def certificate_text(certificate: Certificate) -> str:
    return canonical_json(certificate.to_document()) + "\n"


def write_certificate(certificate: Certificate, path: Optional[str] = None) -> str:
    """
    Serialize a certificate canonically, optionally writing it to disk

    Args:
        certificate: Certificate to write
        path: Target file; nothing is written when None

    Returns:
        The canonical text
    """
    text = certificate_text(certificate)
    if path:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info(f"Certificate written to {path}")
    return text


def read_certificate(path: str) -> Certificate:
    document = load_json(path)
    if not isinstance(document, dict):
        raise SchemaError("Certificate must be a JSON object")
    try:
        return Certificate.from_document(document)
    except ValueError as e:
        raise SchemaError(f"{path}: not a certificate: {e}") from e


def instance_metadata(path: str, certificate: Certificate) -> Dict[str, Any]:
    return {
        "instance": os.path.basename(path),
        "kind": certificate.kind,
        "verdict": certificate.verdict.value,
        "witnesses": len(certificate.witnesses),
    }
