"""
lppgames: cooperative games of linear production with a common-pool resource.

Computes coalition values and optimal resource demands by exact linear
programming, builds the induced characteristic and partition function games,
decides core non-emptiness with dual-price witnesses, and finds partitionally
stable coalition structures.
"""

__version__ = "0.1.0"
__license__ = "Apache-2.0"

from lppgames.core import (
    Allocation,
    check_core_membership,
    core_nonempty,
    owen_allocation,
    partition_core,
    theorem4_allocation,
)
from lppgames.demand import DemandEngine, DemandProfile
from lppgames.exceptions import (
    ConfigurationError,
    DomainError,
    GenerationError,
    InfeasiblePhaseError,
    InstanceParseError,
    LPPGamesError,
    PartitionCapError,
    PreconditionError,
    RefusalError,
    RegimeRefusalError,
    RuleViolationError,
    StructuralError,
)
from lppgames.games import (
    AllocationRule,
    CharacteristicGame,
    PartitionFunctionGame,
    characteristic_game,
    optimistic_game,
    partition_function_game,
    pessimistic_game,
)
from lppgames.lattice import Coalition, EmbeddedCoalition, Partition, enumerate_partitions
from lppgames.model import read_instance, validate_instance
from lppgames.schemas import CoreReport, LPPGamesConfig, LPPInstance, Regime, RegimeReport
from lppgames.stability import StabilityAnalyzer

__all__ = [
    "__version__",
    # Model
    "LPPInstance",
    "Coalition",
    "Partition",
    "EmbeddedCoalition",
    "enumerate_partitions",
    "read_instance",
    "validate_instance",
    "LPPGamesConfig",
    # Demands
    "DemandEngine",
    "DemandProfile",
    "Regime",
    "RegimeReport",
    # Games
    "AllocationRule",
    "CharacteristicGame",
    "PartitionFunctionGame",
    "characteristic_game",
    "optimistic_game",
    "pessimistic_game",
    "partition_function_game",
    # Core
    "Allocation",
    "CoreReport",
    "check_core_membership",
    "core_nonempty",
    "owen_allocation",
    "theorem4_allocation",
    "partition_core",
    "StabilityAnalyzer",
    # Exceptions
    "LPPGamesError",
    "StructuralError",
    "DomainError",
    "PreconditionError",
    "InfeasiblePhaseError",
    "RuleViolationError",
    "RefusalError",
    "PartitionCapError",
    "RegimeRefusalError",
    "GenerationError",
    "InstanceParseError",
    "ConfigurationError",
]
