"""Feasibility-preserving TDMA schedule randomization for wireless mesh networks.

The pipeline: build a topology and periodic flow set, schedule the flows
(`generate_base`), grow a pool of randomized-but-feasible variants
(`build_pool` / `sched_gen`), let every node hop pools in lockstep
(`ScheduleSelector`), then score the defense with schedule entropy
(`schedule_entropy_upper`) and a schedule-inferring jammer
(`jam_success_rate`).
"""

from .errors import (
    DegreeInfeasibleError,
    InfeasibleScheduleError,
    InstanceTooLargeError,
    RouteInfeasibleError,
    ScheduleFormatError,
    SlotSwapperError,
)
from .model import (
    ConflictList,
    Edge,
    Flow,
    FlowInstance,
    FlowSet,
    NetworkGraph,
    Schedule,
    Transmission,
    build_conflict_list,
    deadline_slot,
    hyper_period,
    physical_channel,
    release_slot,
)
from .feasibility import ViolationReport, validate
from .scheduler import generate_base
from .randomizer import (
    dead_pr,
    eligible_list,
    flow_pr,
    hop_window,
    sched_gen,
    swap_is_safe,
    tr_conf,
)
from .protocol import (
    NodeSlotTable,
    SchedulePool,
    ScheduleSelector,
    build_pool,
    footprint,
    node_slot_table,
    pool_capacity,
    select_schedule,
)
from .entropy import (
    SlotDistribution,
    empirical_distribution,
    schedule_entropy_exact,
    schedule_entropy_upper,
    slot_entropy_upper,
)
from .adversary import (
    AttackPlan,
    ObservationTrace,
    estimate_hyper_period,
    jam_success_rate,
    make_plan,
    observe,
)
from .topology import generate_flows, generate_topology, shortest_route
from .formats import (
    load_flows,
    load_pool,
    load_schedule,
    load_topology,
    save_flows,
    save_pool,
    save_schedule,
    save_topology,
)
from .experiment import ExperimentConfig, run_experiment, write_results
from ._kernels import backend_name

__version__ = "0.1.0"

__all__ = [
    "AttackPlan",
    "ConflictList",
    "DegreeInfeasibleError",
    "Edge",
    "ExperimentConfig",
    "Flow",
    "FlowInstance",
    "FlowSet",
    "InfeasibleScheduleError",
    "InstanceTooLargeError",
    "NetworkGraph",
    "NodeSlotTable",
    "ObservationTrace",
    "RouteInfeasibleError",
    "Schedule",
    "ScheduleFormatError",
    "SchedulePool",
    "ScheduleSelector",
    "SlotDistribution",
    "SlotSwapperError",
    "Transmission",
    "ViolationReport",
    "backend_name",
    "build_conflict_list",
    "build_pool",
    "deadline_slot",
    "dead_pr",
    "eligible_list",
    "empirical_distribution",
    "estimate_hyper_period",
    "flow_pr",
    "footprint",
    "generate_base",
    "generate_flows",
    "generate_topology",
    "hop_window",
    "hyper_period",
    "jam_success_rate",
    "load_flows",
    "load_pool",
    "load_schedule",
    "load_topology",
    "make_plan",
    "node_slot_table",
    "observe",
    "physical_channel",
    "pool_capacity",
    "release_slot",
    "run_experiment",
    "save_flows",
    "save_pool",
    "save_schedule",
    "save_topology",
    "sched_gen",
    "schedule_entropy_exact",
    "schedule_entropy_upper",
    "select_schedule",
    "shortest_route",
    "slot_entropy_upper",
    "swap_is_safe",
    "tr_conf",
    "validate",
    "write_results",
]
