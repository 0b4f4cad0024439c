"""Trust-test catalogue, grade/subgrade profiles, and plan derivation.

The catalogue is pure data: the engine never hardcodes test ids or
weights. The default catalogue and profile documents ship as package
data under ``sci_iot/data/`` and are loaded with :func:`default_catalog`
and :func:`default_profiles`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import EmptyCatalog, EmptyPlan, ParseError, SchemaError, ValidationError

TEST_ID_PATTERN = re.compile(r"^[A-Z]{2,4}$")

WEIGHT_MIN = 1.0
WEIGHT_MAX = 2.0


class Category(str, Enum):
    CRITICAL_SECURITY = "CriticalSecurity"
    STRONG_SECURITY = "StrongSecurity"
    SUPPORTING_ASSURANCE = "SupportingAssurance"
    RESILIENCE = "Resilience"
    ORGANISATIONAL = "Organisational"
    GOVERNANCE = "Governance"


class SecurityDomain(str, Enum):
    IDENTITY_AUTH = "IdentityAuth"
    NETWORK_DATA = "NetworkData"
    FIRMWARE_UPDATE = "FirmwareUpdate"
    PRIVACY = "Privacy"
    RESILIENCE_RECOVERY = "ResilienceRecovery"
    SOFTWARE_SBOM = "SoftwareSBOM"
    MONITORING_AUDIT = "MonitoringAudit"


@dataclass(frozen=True)
class TrustTest:
    """One catalogue entry: a standardized, weighted trust test."""

    id: str
    name: str
    category: Category
    security_domain: SecurityDomain
    weight: float
    critical_gate: bool
    description: str = ""

    def __post_init__(self):
        if not TEST_ID_PATTERN.match(self.id):
            raise ValidationError(f"test id {self.id!r} must be 2-4 uppercase letters")
        if not (WEIGHT_MIN <= self.weight <= WEIGHT_MAX):
            raise ValidationError(
                f"test {self.id}: weight {self.weight} outside [{WEIGHT_MIN}, {WEIGHT_MAX}]"
            )


@dataclass(frozen=True)
class Catalog:
    """An ordered, duplicate-free collection of trust tests."""

    version: str
    tests: tuple[TrustTest, ...]

    def __post_init__(self):
        seen: set[str] = set()
        for test in self.tests:
            if test.id in seen:
                raise ValidationError(f"duplicate test id {test.id!r} in catalogue")
            seen.add(test.id)

    def by_id(self, test_id: str) -> TrustTest:
        for test in self.tests:
            if test.id == test_id:
                return test
        raise KeyError(test_id)

    def ids(self) -> list[str]:
        return [t.id for t in self.tests]

    def gate_ids(self) -> list[str]:
        return [t.id for t in self.tests if t.critical_gate]

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "tests": [
                {
                    "id": t.id,
                    "name": t.name,
                    "category": t.category.value,
                    "security_domain": t.security_domain.value,
                    "weight": t.weight,
                    "critical_gate": t.critical_gate,
                    "description": t.description,
                }
                for t in self.tests
            ],
        }


@dataclass(frozen=True)
class SubgradeProfile:
    """Certification bar for one grade/subgrade.

    ``key`` is the short lookup label ("A1"); ``label`` the descriptive
    one. An empty ``applicable_tests`` set means every catalogue test
    applies.
    """

    grade: str
    subgrade: int
    label: str
    min_sci: float
    default_threshold: bool = False
    mandatory: dict[str, int] = field(default_factory=dict)
    applicable_tests: frozenset[str] = frozenset()
    notes: str = ""

    def __post_init__(self):
        if self.grade not in ("A", "B", "C", "D", "E", "F"):
            raise ValidationError(f"grade {self.grade!r} not in A-F")
        if self.subgrade not in (1, 2, 3):
            raise ValidationError(f"subgrade {self.subgrade} not in 1-3")
        if not (0.0 <= self.min_sci <= 100.0):
            raise ValidationError(f"profile {self.key}: min_sci {self.min_sci} outside [0, 100]")
        for tid, rating in self.mandatory.items():
            if rating not in (2, 3, 4):
                raise ValidationError(
                    f"profile {self.key}: mandatory rating {rating} for {tid} not in 2-4"
                )

    @property
    def key(self) -> str:
        return f"{self.grade}{self.subgrade}"

    def applicable_ids(self, catalog: Catalog) -> list[str]:
        """Applicable test ids in catalogue order, empty set meaning all."""
        if not self.applicable_tests:
            return catalog.ids()
        return [tid for tid in catalog.ids() if tid in self.applicable_tests]

    def to_dict(self) -> dict:
        return {
            "grade": self.grade,
            "subgrade": self.subgrade,
            "label": self.label,
            "min_sci": self.min_sci,
            "default_threshold": self.default_threshold,
            "mandatory": dict(self.mandatory),
            "applicable_tests": sorted(self.applicable_tests),
            "notes": self.notes,
        }


@dataclass(frozen=True)
class PlanEntry:
    test_id: str
    weight: float
    critical_gate: bool
    required_min_rating: int | None = None


@dataclass(frozen=True)
class PlanOfEvaluation:
    """The resolved set of tests one assessment is scored against."""

    profile_label: str
    entries: tuple[PlanEntry, ...]

    @property
    def total_weight(self) -> float:
        return sum(e.weight for e in self.entries)

    def ids(self) -> list[str]:
        return [e.test_id for e in self.entries]


def _load_json(source) -> dict:
    """Parse a JSON document from bytes, str, or a readable object."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    return doc


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def load_catalog(source) -> Catalog:
    """Load and validate a catalogue document (bytes, str, or file)."""
    doc = _load_json(source)
    version = _require(doc, "version", str, "catalogue")
    raw_tests = _require(doc, "tests", list, "catalogue")
    tests = []
    for i, raw in enumerate(raw_tests):
        if not isinstance(raw, dict):
            raise SchemaError(f"catalogue test #{i}: not an object")
        where = f"catalogue test #{i}"
        tid = _require(raw, "id", str, where)
        name = _require(raw, "name", str, where)
        category = _require(raw, "category", str, where)
        domain = _require(raw, "security_domain", str, where)
        weight = _require(raw, "weight", (int, float), where)
        gate = _require(raw, "critical_gate", bool, where)
        description = raw.get("description", "")
        try:
            cat = Category(category)
        except ValueError:
            raise SchemaError(f"{where}: unknown category {category!r}")
        try:
            dom = SecurityDomain(domain)
        except ValueError:
            raise SchemaError(f"{where}: unknown security_domain {domain!r}")
        tests.append(
            TrustTest(
                id=tid,
                name=name,
                category=cat,
                security_domain=dom,
                weight=float(weight),
                critical_gate=gate,
                description=description,
            )
        )
    return Catalog(version=version, tests=tuple(tests))


def load_profiles(source, catalog: Catalog) -> list[SubgradeProfile]:
    """Load and validate a profiles document against its catalogue."""
    doc = _load_json(source)
    raw_profiles = _require(doc, "profiles", list, "profiles")
    known = set(catalog.ids())
    profiles = []
    seen_keys: set[str] = set()
    for i, raw in enumerate(raw_profiles):
        if not isinstance(raw, dict):
            raise SchemaError(f"profile #{i}: not an object")
        where = f"profile #{i}"
        grade = _require(raw, "grade", str, where)
        subgrade = _require(raw, "subgrade", int, where)
        label = _require(raw, "label", str, where)
        min_sci = _require(raw, "min_sci", (int, float), where)
        default_threshold = raw.get("default_threshold", False)
        mandatory = raw.get("mandatory", {})
        applicable = raw.get("applicable_tests", [])
        notes = raw.get("notes", "")
        if not isinstance(mandatory, dict):
            raise SchemaError(f"{where}: mandatory must be an object")
        if not isinstance(applicable, list):
            raise SchemaError(f"{where}: applicable_tests must be a list")
        for tid in mandatory:
            if tid not in known:
                raise ValidationError(f"{where}: mandatory test {tid!r} not in catalogue")
        for tid in applicable:
            if tid not in known:
                raise ValidationError(f"{where}: applicable test {tid!r} not in catalogue")
        applicable_set = frozenset(applicable)
        if applicable_set and not set(mandatory) <= applicable_set:
            raise ValidationError(f"{where}: mandatory tests must be within the applicable set")
        profile = SubgradeProfile(
            grade=grade,
            subgrade=subgrade,
            label=label,
            min_sci=float(min_sci),
            default_threshold=bool(default_threshold),
            mandatory={k: int(v) for k, v in mandatory.items()},
            applicable_tests=applicable_set,
            notes=notes,
        )
        if profile.key in seen_keys:
            raise ValidationError(f"duplicate profile {profile.key}")
        seen_keys.add(profile.key)
        profiles.append(profile)
    return profiles


def total_weight(item: Catalog | PlanOfEvaluation) -> float:
    """Arithmetic sum of weights; rejects empty catalogues/plans."""
    if isinstance(item, Catalog):
        if not item.tests:
            raise EmptyCatalog("catalogue has no tests")
        return sum(t.weight for t in item.tests)
    if not item.entries:
        raise EmptyCatalog("plan has no entries")
    return item.total_weight


def plan_of_evaluation(catalog: Catalog, profile: SubgradeProfile | None = None) -> PlanOfEvaluation:
    """Resolve the applicable tests, weights, gates, and minima for one run.

    With no profile the plan covers every catalogue test and carries the
    label "score-only".
    """
    if profile is None:
        ids = catalog.ids()
        label = "score-only"
        mandatory: dict[str, int] = {}
    else:
        ids = profile.applicable_ids(catalog)
        label = profile.key
        mandatory = profile.mandatory
    if not ids:
        raise EmptyPlan(f"plan for {label!r} resolves to zero tests")
    entries = []
    for tid in ids:
        test = catalog.by_id(tid)
        entries.append(
            PlanEntry(
                test_id=tid,
                weight=test.weight,
                critical_gate=test.critical_gate,
                required_min_rating=mandatory.get(tid),
            )
        )
    return PlanOfEvaluation(profile_label=label, entries=tuple(entries))


def profile_by_key(profiles: list[SubgradeProfile], key: str) -> SubgradeProfile:
    for profile in profiles:
        if profile.key == key:
            return profile
    raise ValidationError(f"unknown profile {key!r}")


def default_catalog() -> Catalog:
    data = resources.files("sci_iot.data").joinpath("catalog.json").read_bytes()
    return load_catalog(data)


def default_profiles(catalog: Catalog | None = None) -> list[SubgradeProfile]:
    catalog = catalog or default_catalog()
    data = resources.files("sci_iot.data").joinpath("profiles.json").read_bytes()
    return load_profiles(data, catalog)
