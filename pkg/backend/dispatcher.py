#!/usr/bin/env python3
"""
AlgInt Certify - Instance Dispatcher
Validates problem instances against the schema of their kind and runs the
matching certifier, returning a Certificate.
"""

import os
import sys
import logging
from typing import Any, Callable, Dict, List, Optional, Union

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config import Config
from modules.certificate import Certificate, Verdict, Witness
from modules.certify import (
    PowerSumSpec,
    dio_certificate,
    groupring_eval,
    groupring_window,
    k2_certify,
    powersum_window,
    subsum_certificate,
    trace_power_window,
    tracepoly_scan,
)
from modules.codec import canonical_json, load_json, parse_element, parse_poly
from modules.errors import SchemaError
from modules.fatou import (
    FieldPoly,
    MultiPoly,
    RationalFunction,
    fatou_certify,
    is_integral_polynomial,
    poly_integral_check,
    polyvalue_scan,
    ratfunc_power_combo,
)
from modules.kind_resolver import KindResolver
from modules.numfield import NFElement, NumberField, is_algebraic_integer
from modules.unity import partition_classes, verify_galois_data
from modules.valuation import log_height_bounds

logger = logging.getLogger(__name__)

ElementData = Union[str, int, Dict[str, List[Union[str, int]]]]

DEFAULT_SCAN_WINDOW = 20
DEFAULT_DIO_WINDOW = 64


# Request models

class FieldSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    defpoly: List[Union[str, int]] = Field(default_factory=lambda: ["0", "1"])


class InstanceOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")
    window: Optional[int] = None
    n_max: Optional[int] = None
    precision_bits: Optional[int] = None


class ProblemInstance(BaseModel):
    """An instance file: kind, ambient field, kind-specific payload and options"""
    model_config = ConfigDict(extra="allow")
    kind: str
    field: FieldSpec = Field(default_factory=FieldSpec)
    payload: Dict[str, Any] = Field(default_factory=dict)
    options: InstanceOptions = Field(default_factory=InstanceOptions)

    def merged_payload(self) -> Dict[str, Any]:
        # Payload keys may also be written at the top level of the instance
        merged = dict(self.model_extra or {})
        merged.update(self.payload)
        return merged


class _Payload(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class FieldCheckPayload(_Payload):
    pass


class TraceWindowPayload(_Payload):
    lam: ElementData = Field(default="1", alias="lambda")
    alpha: ElementData
    q: int = 1
    window: Optional[int] = None
    closure_degree: Optional[int] = None


class K2Payload(_Payload):
    lambdas: List[ElementData] = Field(min_length=2, max_length=2)
    alphas: List[ElementData] = Field(min_length=2, max_length=2)


class PowerSumPayload(_Payload):
    lambdas: List[ElementData]
    alphas: List[ElementData]
    window: Optional[int] = None


class ClassesPayload(_Payload):
    alphas: List[ElementData] = Field(min_length=1)


class SubsumPayload(_Payload):
    lambdas: List[ElementData]
    alphas: List[ElementData]
    h_star: Optional[int] = None


class GroupRingPayload(_Payload):
    images: List[ElementData]
    coeffs: List[ElementData]
    alpha: ElementData
    n: Optional[int] = None
    window: Optional[int] = None


class DioPayload(_Payload):
    lambdas: List[ElementData]
    alphas: List[ElementData]
    target: Union[str, int]
    window: Optional[int] = None


class FatouPayload(_Payload):
    num: List[ElementData]
    den: List[ElementData]
    n_max: Optional[int] = None


class RatFuncEntry(_Payload):
    num: List[ElementData]
    den: List[ElementData] = Field(default_factory=lambda: ["1"])


class RatFuncPayload(_Payload):
    functions: List[RatFuncEntry] = Field(min_length=1)
    lambdas: List[ElementData]
    n: int = 1


class PolyTerm(_Payload):
    exponents: List[int]
    coeff: ElementData


class PolyValuePayload(_Payload):
    nvars: int
    terms: List[PolyTerm]
    alphas: List[ElementData]
    window: Optional[int] = None


class TracePolyPayload(_Payload):
    coeffs: List[ElementData]
    alpha: ElementData
    window: Optional[int] = None


PAYLOAD_MODELS = {
    "field-check": FieldCheckPayload,
    "trace-window": TraceWindowPayload,
    "k2": K2Payload,
    "powersum": PowerSumPayload,
    "classes": ClassesPayload,
    "subsum": SubsumPayload,
    "groupring": GroupRingPayload,
    "dio": DioPayload,
    "fatou": FatouPayload,
    "ratfunc": RatFuncPayload,
    "polyvalue": PolyValuePayload,
    "tracepoly": TracePolyPayload,
}


def _schema_error(kind: str, error: ValidationError) -> SchemaError:
    problems = "; ".join(
        f"{'.'.join(str(p) for p in item['loc']) or '<root>'}: {item['msg']}" for item in error.errors()
    )
    return SchemaError(f"Invalid {kind} instance: {problems}")


def parse_instance(document: Any) -> ProblemInstance:
    """
    Validate a decoded instance document

    Args:
        document: Decoded JSON

    Returns:
        ProblemInstance whose payload matches its kind
    """
    if not isinstance(document, dict):
        raise SchemaError("Instance must be a JSON object")
    try:
        instance = ProblemInstance.model_validate(document)
    except ValidationError as e:
        raise _schema_error(str(document.get("kind", "?")), e) from e
    model = PAYLOAD_MODELS.get(instance.kind)
    if model is None:
        raise SchemaError(f"Unknown instance kind {instance.kind!r}")
    try:
        model.model_validate(instance.merged_payload())
    except ValidationError as e:
        raise _schema_error(instance.kind, e) from e
    return instance


def serialize_instance(instance: ProblemInstance) -> str:
    return canonical_json(instance.model_dump(mode="json", exclude_none=True))


class InstanceDispatcher:
    """
    Runs problem instances
    Builds the ambient field, decodes the payload and calls the certifier for its kind
    """

    def __init__(self, config: Optional[Config] = None, resolver: Optional[KindResolver] = None):
        """
        Initialize the dispatcher

        Args:
            config: Configuration object (defaults are used when None)
            resolver: Kind resolver
        """
        self.config = config or Config(config_file="")
        self.resolver = resolver or KindResolver()
        self.handlers: Dict[str, Callable[[NumberField, Any, InstanceOptions], Certificate]] = {
            "field-check": self._run_field_check,
            "trace-window": self._run_trace_window,
            "k2": self._run_k2,
            "powersum": self._run_powersum,
            "classes": self._run_classes,
            "subsum": self._run_subsum,
            "groupring": self._run_groupring,
            "dio": self._run_dio,
            "fatou": self._run_fatou,
            "ratfunc": self._run_ratfunc,
            "polyvalue": self._run_polyvalue,
            "tracepoly": self._run_tracepoly,
        }

    def load(self, path: str) -> ProblemInstance:
        return parse_instance(load_json(path))

    def build_field(self, spec: FieldSpec) -> NumberField:
        return NumberField(
            parse_poly(spec.defpoly),
            prime_count=self.config.irreducibility_primes,
            search_degree=self.config.irreducibility_search_degree,
        )

    def run(self, instance: ProblemInstance, overrides: Optional[InstanceOptions] = None) -> Certificate:
        """
        Run one instance

        Args:
            instance: Validated instance
            overrides: Command-line options that win over the instance options

        Returns:
            The certificate
        """
        self.resolver.resolve(instance.kind)
        options = instance.options.model_copy()
        if overrides is not None:
            options = options.model_copy(update=overrides.model_dump(exclude_none=True))
        payload = PAYLOAD_MODELS[instance.kind].model_validate(instance.merged_payload())
        field = self.build_field(instance.field)
        logger.info(f"Running {instance.kind} instance over Q[x]/({field.defpoly})")
        return self.handlers[instance.kind](field, payload, options)

    def run_file(self, path: str, overrides: Optional[InstanceOptions] = None,
                 expected_kind: Optional[str] = None) -> Certificate:
        document = load_json(path)
        if expected_kind is not None and isinstance(document, dict):
            document.setdefault("kind", expected_kind)
            if document["kind"] != expected_kind:
                raise SchemaError(f"Instance kind {document['kind']!r} cannot be run as {expected_kind!r}")
        return self.run(parse_instance(document), overrides)

    # Helpers

    @staticmethod
    def _elements(field: NumberField, items: List[ElementData]) -> List[NFElement]:
        return [parse_element(field, item) for item in items]

    def _spec(self, field: NumberField, lambdas: List[ElementData], alphas: List[ElementData]) -> PowerSumSpec:
        return PowerSumSpec(tuple(self._elements(field, lambdas)), tuple(self._elements(field, alphas)))

    @staticmethod
    def _window(options: InstanceOptions, payload_window: Optional[int], default: Optional[int]) -> Optional[int]:
        if options.window is not None:
            return options.window
        return payload_window if payload_window is not None else default

    def _precision(self, options: InstanceOptions) -> int:
        return options.precision_bits or self.config.default_precision_bits

    def _ratfunc(self, field: NumberField, num: List[ElementData], den: List[ElementData]) -> RationalFunction:
        return RationalFunction(FieldPoly(field, self._elements(field, num)), FieldPoly(field, self._elements(field, den)))

    # Handlers

    def _run_field_check(self, field: NumberField, payload: FieldCheckPayload, options: InstanceOptions) -> Certificate:
        return Certificate(
            kind="field-check",
            criterion=self.resolver.resolve("field-check")["criterion"],
            verdict=Verdict.PASS,
            data={
                "field": field.to_json(),
                "degree": field.degree,
                "irreducibility_status": field.irreducibility_status,
                "method": field.irreducibility_method,
                "theta_log_height": log_height_bounds(field.theta(), self._precision(options)).to_json(),
            },
        )

    def _run_trace_window(self, field: NumberField, payload: TraceWindowPayload, options: InstanceOptions) -> Certificate:
        return trace_power_window(
            parse_element(field, payload.lam),
            parse_element(field, payload.alpha),
            q=payload.q,
            window=self._window(options, payload.window, None),
            closure_degree=payload.closure_degree,
        )

    def _run_k2(self, field: NumberField, payload: K2Payload, options: InstanceOptions) -> Certificate:
        lam1, lam2 = self._elements(field, payload.lambdas)
        a1, a2 = self._elements(field, payload.alphas)
        return k2_certify(lam1, lam2, a1, a2)

    def _run_powersum(self, field: NumberField, payload: PowerSumPayload, options: InstanceOptions) -> Certificate:
        spec = self._spec(field, payload.lambdas, payload.alphas)
        return powersum_window(spec, self._window(options, payload.window, DEFAULT_SCAN_WINDOW))

    def _run_classes(self, field: NumberField, payload: ClassesPayload, options: InstanceOptions) -> Certificate:
        alphas = self._elements(field, payload.alphas)
        partition = partition_classes(alphas)
        bits = self._precision(options)
        return Certificate(
            kind="classes",
            criterion=self.resolver.resolve("classes")["criterion"],
            verdict=Verdict.PASS,
            bound_used=partition.effective_torsion,
            notes=[] if partition.all_singletons else ["Some ratios are roots of unity: the tuple is degenerate"],
            data={
                "partition": partition.to_json(),
                "log_heights": [log_height_bounds(a, bits).to_json() for a in alphas],
            },
        )

    def _run_subsum(self, field: NumberField, payload: SubsumPayload, options: InstanceOptions) -> Certificate:
        spec = self._spec(field, payload.lambdas, payload.alphas)
        return subsum_certificate(spec, payload.h_star, max_terms=self.config.max_subsum_terms)

    def _run_groupring(self, field: NumberField, payload: GroupRingPayload, options: InstanceOptions) -> Certificate:
        gd = verify_galois_data(field, self._elements(field, payload.images))
        coeffs = self._elements(field, payload.coeffs)
        alpha = parse_element(field, payload.alpha)
        window = self._window(options, payload.window, None)
        if window is None and payload.n is not None:
            value = groupring_eval(gd, coeffs, alpha, payload.n)
            integral = is_algebraic_integer(value).integral
            return Certificate(
                kind="groupring",
                criterion=self.resolver.resolve("groupring")["criterion"],
                verdict=Verdict.PASS if integral else Verdict.FAIL_WITNESS,
                window=(payload.n, payload.n),
                witnesses=[] if integral else [Witness(index=payload.n, detail={"value": value.to_json()})],
                data={"value": value.to_json(), "integral": integral},
            )
        return groupring_window(gd, coeffs, alpha, window or DEFAULT_SCAN_WINDOW)

    def _run_dio(self, field: NumberField, payload: DioPayload, options: InstanceOptions) -> Certificate:
        spec = self._spec(field, payload.lambdas, payload.alphas)
        return dio_certificate(spec, payload.target, self._window(options, payload.window, DEFAULT_DIO_WINDOW))

    def _run_fatou(self, field: NumberField, payload: FatouPayload, options: InstanceOptions) -> Certificate:
        f = self._ratfunc(field, payload.num, payload.den)
        n_max = options.n_max if options.n_max is not None else payload.n_max
        return fatou_certify(f, n_max, nmax_scale=self.config.fatou_nmax_scale)

    def _run_ratfunc(self, field: NumberField, payload: RatFuncPayload, options: InstanceOptions) -> Certificate:
        fs = [self._ratfunc(field, entry.num, entry.den) for entry in payload.functions]
        combo = ratfunc_power_combo(fs, self._elements(field, payload.lambdas), payload.n)
        criterion = self.resolver.resolve("ratfunc")["criterion"]
        data = {"combination": combo.to_json(), "n": payload.n}
        if not combo.is_polynomial:
            return Certificate(kind="ratfunc", criterion=criterion, verdict=Verdict.FAIL_WITNESS,
                               witnesses=[Witness(index=combo.den.degree, detail={"reason": "denominator is not constant"})],
                               data=data)
        check = poly_integral_check(combo.num * combo.den[0].inverse())
        data["integral_polynomial"] = is_integral_polynomial(combo)
        return Certificate(kind="ratfunc", criterion=criterion, verdict=check.verdict,
                           window=check.window, witnesses=check.witnesses, data=data)

    def _run_polyvalue(self, field: NumberField, payload: PolyValuePayload, options: InstanceOptions) -> Certificate:
        terms: Dict[Any, Any] = {}
        for term in payload.terms:
            key = tuple(term.exponents)
            terms[key] = terms.get(key, field.zero()) + parse_element(field, term.coeff)
        p = MultiPoly(field, payload.nvars, terms)
        return polyvalue_scan(p, self._elements(field, payload.alphas),
                              self._window(options, payload.window, DEFAULT_SCAN_WINDOW))

    def _run_tracepoly(self, field: NumberField, payload: TracePolyPayload, options: InstanceOptions) -> Certificate:
        return tracepoly_scan(self._elements(field, payload.coeffs), parse_element(field, payload.alpha),
                              self._window(options, payload.window, DEFAULT_SCAN_WINDOW))
