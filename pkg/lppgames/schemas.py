"""
Data schemas and models for lppgames.

Uses Pydantic for validation of instance documents and configuration files,
and for JSON serialization of reports. Every number is an exact rational;
integral values serialize as JSON integers and the rest as "num/den" strings.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    field_serializer,
    field_validator,
    model_validator,
)

from lppgames.lattice import Partition

RULE_NAMES = ("proportional", "optimistic-embedded", "pessimistic-embedded")


def parse_rational(value: Any) -> Fraction:
    """Read an exact rational from an int, a "num/den" or decimal string, or a float.

    Floats go through their shortest decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        text = value.replace(" ", "")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in '{value}'")
        except ValueError:
            pass
        try:
            return Fraction(Decimal(text))
        except (InvalidOperation, ValueError):
            raise ValueError(f"'{value}' is not a rational number")
    raise ValueError(f"expected a number, got {type(value).__name__}")


def format_rational(value: Fraction) -> int | str:
    """JSON form of a rational: an int when integral, else ``"num/den"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=Any),
]


class OutputFormat(str, Enum):
    """Report rendering."""

    TABLE = "table"
    JSON = "json"


class StabilitySemantics(str, Enum):
    """How reduced games cap the common-pool resource inside a block union."""

    CAPPED = "capped"
    BLOCK_LEVEL = "block-level"


class Regime(str, Enum):
    """How binding the common-pool stock is, read off the minimal over-demanding partitions."""

    UNCONSTRAINED = "unconstrained"
    GRAND_ONLY = "grand-only"
    GENERAL = "general"


class CoreVerdict(str, Enum):
    EMPTY = "empty"
    NON_EMPTY = "non-empty"


class Provenance(str, Enum):
    """Where a core witness came from."""

    FEASIBILITY_LP = "feasibility-lp"
    OWEN_CONSTRUCTION = "owen-construction"
    THEOREM4_CONSTRUCTION = "theorem4-construction"
    THEOREM6_CONSTRUCTION = "theorem6-construction"


class ModelSelector(str, Enum):
    """Which game the ``game`` and ``core`` commands build."""

    CHARACTERISTIC = "characteristic"
    OPTIMISTIC = "optimistic"
    PESSIMISTIC = "pessimistic"
    RESOURCE_OPT = "resource-opt"
    RESOURCE_PES = "resource-pes"
    PARTITION = "partition"
    BANKRUPTCY = "bankruptcy"
    SUPPLIED = "supplied"
    SUPPLIED_RESOURCE = "supplied-resource"


class DominanceMode(str, Enum):
    """Whether a dominating coalition must be able to enforce its payoff in every partition or in one."""

    ALL_PARTITIONS = "all-partitions"
    SOME_PARTITION = "some-partition"


class PartitionCoreMode(str, Enum):
    PESSIMISTIC = "pessimistic"
    OPTIMISTIC = "optimistic"


# Instance documents


class LPPInstance(BaseModel):
    """A linear production situation with a common-pool resource.

    ``production_matrix`` has q+1 rows: rows 0..q-1 are private resources and
    the last row holds the common-pool coefficients. ``endowments`` has q rows
    and one column per producer.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=True)

    production_matrix: tuple[tuple[Rational, ...], ...] = Field(alias="A")
    endowments: tuple[tuple[Rational, ...], ...] = Field(alias="B")
    prices: tuple[Rational, ...] = Field(alias="p")
    unit_cost: Rational = Field(alias="c")
    stock: Rational = Field(alias="r")

    @model_validator(mode="after")
    def check_shapes(self) -> LPPInstance:
        if not self.production_matrix or not self.production_matrix[0]:
            raise ValueError("A must have at least one row and one column")
        g = len(self.production_matrix[0])
        for t, row in enumerate(self.production_matrix):
            if len(row) != g:
                raise ValueError(f"A row {t + 1} has {len(row)} entries, expected {g}")
        if not self.endowments or not self.endowments[0]:
            raise ValueError("B must have at least one row and one column")
        n = len(self.endowments[0])
        for t, row in enumerate(self.endowments):
            if len(row) != n:
                raise ValueError(f"B row {t + 1} has {len(row)} entries, expected {n}")
        if len(self.production_matrix) != len(self.endowments) + 1:
            raise ValueError(
                f"A has {len(self.production_matrix)} rows; expected q+1 = "
                f"{len(self.endowments) + 1} for the {len(self.endowments)} rows of B"
            )
        if len(self.prices) != g:
            raise ValueError(f"p has {len(self.prices)} entries, expected {g}")
        return self

    @property
    def n(self) -> int:
        return len(self.endowments[0])

    @property
    def q(self) -> int:
        return len(self.endowments)

    @property
    def g(self) -> int:
        return len(self.prices)

    @property
    def resource_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.production_matrix[: self.q]

    @property
    def common_pool_row(self) -> tuple[Fraction, ...]:
        return self.production_matrix[self.q]

    def endowment(self, player: int) -> tuple[Fraction, ...]:
        """Column b^i of B for 0-based ``player``."""
        return tuple(row[player] for row in self.endowments)

    def with_stock(self, stock: Fraction | int) -> LPPInstance:
        return self.model_copy(update={"stock": Fraction(stock)})

    def to_document(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class InstanceDocument(LPPInstance):
    """Instance file contents: the situation plus an optional supplied resource game.

    ``resource_game`` maps coalition labels ("1", "12", "1,10") to the amount
    of stock the coalition expects; ``allocation`` is a split of the stock
    meant to lie in the core of that game.
    """

    resource_game: dict[str, Rational] | None = Field(default=None, alias="R")
    allocation: tuple[Rational, ...] | None = Field(default=None, alias="u")

    @model_validator(mode="after")
    def check_allocation_length(self) -> InstanceDocument:
        if self.allocation is not None and len(self.allocation) != self.n:
            raise ValueError(f"u has {len(self.allocation)} entries, expected {self.n}")
        return self

    def situation(self) -> LPPInstance:
        """The bare situation without the supplied resource game."""
        return LPPInstance(
            A=self.production_matrix,
            B=self.endowments,
            p=self.prices,
            c=self.unit_cost,
            r=self.stock,
        )


# Configuration Models


class LimitsConfig(BaseModel):
    """Enumeration limits."""

    partition_cap: int = Field(default=10, ge=1)
    owen_enumeration_max_players: int = Field(default=3, ge=1)


class OutputConfig(BaseModel):
    """Report rendering defaults."""

    format: OutputFormat = Field(default=OutputFormat.TABLE)
    decimals: int | None = Field(default=None, ge=0)


class StabilityConfig(BaseModel):
    semantics: StabilitySemantics = Field(default=StabilitySemantics.CAPPED)


class GeneratorConfig(BaseModel):
    """Random instance generation bounds."""

    max_attempts: int = Field(default=200, ge=1)
    max_technology_entry: int = Field(default=5, ge=1)
    max_endowment_entry: int = Field(default=20, ge=1)
    max_unit_cost: int = Field(default=3, ge=0)


class LPPGamesConfig(BaseModel):
    """Main configuration, read from ``.lppgames.yml``."""

    version: int = Field(default=1)
    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    stability: StabilityConfig = Field(default_factory=StabilityConfig)
    generator: GeneratorConfig = Field(default_factory=GeneratorConfig)

    @field_validator("version")
    @classmethod
    def validate_version(cls, v: int) -> int:
        if v != 1:
            raise ValueError("Only version 1 is supported")
        return v


class RunConfig(BaseModel):
    """Settings for one CLI invocation, merged from flags and the config file."""

    command: str
    input_path: Path | None = None
    model_selector: ModelSelector | None = None
    rule_name: str | None = None
    core_view: PartitionCoreMode | None = None
    output_format: OutputFormat = OutputFormat.TABLE
    decimals: int | None = Field(default=None, ge=0)
    partition_cap: int = Field(default=10, ge=1)
    seed: int | None = None
    semantics: StabilitySemantics = StabilitySemantics.CAPPED
    owen_enumeration_max_players: int = Field(default=3, ge=1)

    @model_validator(mode="after")
    def check_model_and_rule(self) -> RunConfig:
        if self.rule_name is not None:
            if self.model_selector is not ModelSelector.PARTITION:
                raise ValueError("--rule only applies to --model partition")
            if self.rule_name not in RULE_NAMES:
                raise ValueError(
                    f"Unknown rule '{self.rule_name}'; choose one of {', '.join(RULE_NAMES)}"
                )
        elif self.model_selector is ModelSelector.PARTITION:
            self.rule_name = RULE_NAMES[0]
        if self.core_view is not None and self.model_selector is not ModelSelector.PARTITION:
            raise ValueError("--view only applies to --model partition")
        if self.model_selector is ModelSelector.PARTITION and self.command == "core":
            self.core_view = self.core_view or PartitionCoreMode.PESSIMISTIC
        return self


# Output Models


class Violation(BaseModel):
    """One failed instance assumption."""

    code: str
    message: str
    location: str | None = None


class RegimeReport(BaseModel):
    """Minimal over-demanding partitions and the regime they imply."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    regime: Regime
    m_min: tuple[Partition, ...] = Field(default_factory=tuple)
    stock: Rational
    grand_demand: Rational

    @model_validator(mode="after")
    def check_regime(self) -> RegimeReport:
        if not self.m_min:
            expected = Regime.UNCONSTRAINED
        elif len(self.m_min) == 1 and len(self.m_min[0]) == 1:
            expected = Regime.GRAND_ONLY
        else:
            expected = Regime.GENERAL
        if self.regime is not expected:
            raise ValueError(f"regime {self.regime.value} inconsistent with M^min")
        return self

    @field_serializer("m_min")
    def serialize_partitions(self, m_min: tuple[Partition, ...], _info) -> list[str]:
        return [str(partition) for partition in m_min]


class CoreReport(BaseModel):
    """Core verdict for one characteristic game."""

    game: str
    verdict: CoreVerdict
    witness: tuple[Rational, ...] | None = None
    provenance: Provenance | None = None

    @model_validator(mode="after")
    def check_witness(self) -> CoreReport:
        if self.verdict is CoreVerdict.NON_EMPTY and (self.witness is None or self.provenance is None):
            raise ValueError("a non-empty verdict needs a witness and its provenance")
        if self.verdict is CoreVerdict.EMPTY and self.witness is not None:
            raise ValueError("an empty verdict carries no witness")
        return self

    @property
    def nonempty(self) -> bool:
        return self.verdict is CoreVerdict.NON_EMPTY


class StabilityCertificate(BaseModel):
    """Why a partition is or is not partitionally stable.

    ``condition`` is 1 when a block's own reduced game has an empty core and
    2 when some merger of blocks has a non-empty one; ``witness`` names that
    block or merger.
    """

    partition: str
    stable: bool
    condition: int | None = Field(default=None, ge=1, le=2)
    witness: str | None = None


class StabilityReport(BaseModel):
    semantics: StabilitySemantics
    stable: list[str]
    certificates: list[StabilityCertificate]
