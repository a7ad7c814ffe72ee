"""Most Permissive analysis and marker reprogramming of locally-monotone
Boolean networks."""

from .bn import (
    BooleanNetwork,
    InfluenceGraph,
    apply_perturbation,
    influence_graph,
    is_locally_monotone,
    load_bnet,
    parse_booleannet,
    serialize_booleannet,
    unateness_certificate,
)
from .ensembles import (
    ExplicitDomain,
    GraphDomain,
    domain_attractors,
    enumerate_domain,
    load_domain,
    solve_ensemble,
    solve_existential_fixpoints,
    solve_universal_attractors,
    solve_universal_fixpoints,
)
from .errors import (
    BNError,
    BooleanNetSyntaxError,
    DomainTooLargeError,
    DuplicateComponentError,
    NotUnateError,
    TooLargeError,
    UndeclaredComponentError,
    UnknownComponentError,
)
from .mp import (
    Limits,
    attractor_reachable,
    fixed_points,
    in_attractor,
    is_trap_space,
    minimal_trap_spaces,
    smallest_trap_space,
)
from .reprogramming import (
    Reprogramming,
    iter_solutions,
    solve_p1,
    solve_p2,
    solve_p3,
    solve_p4,
)

__version__ = "0.1.0"
