"""A-perfect matchings in bipartite hypergraphs with capacitated B-vertices."""

import logging
from collections import Counter
from typing import Any, Dict, Hashable, Mapping, Optional, Sequence, Tuple

import attr
import networkx as nx

from ..config import settings
from ..errors import BudgetExhaustedError

logger = logging.getLogger(__name__)

Option = Tuple[Hashable, ...]


@attr.s(auto_attribs=True)
class MatchingResult:
    """Chosen option per A-vertex plus the degree condition d(a) >= 8 r' D."""
    assignment: Dict[Hashable, Option]
    min_a_degree: int
    max_b_degree: int
    r_prime: int
    nodes: int = 0

    @property
    def degree_condition(self) -> bool:
        return self.min_a_degree >= 8 * self.r_prime * self.max_b_degree

    def loads(self) -> Counter:
        used = Counter()
        for option in self.assignment.values():
            used.update(option)
        return used

    def to_dict(self) -> Dict[str, Any]:
        return {
            'matched': len(self.assignment),
            'min_a_degree': self.min_a_degree,
            'max_b_degree': self.max_b_degree,
            'r_prime': self.r_prime,
            'degree_condition': self.degree_condition,
            'nodes': self.nodes,
        }


def _degrees(options: Mapping[Hashable, Sequence[Option]]) -> Tuple[int, int, int]:
    b_degree = Counter()
    for opts in options.values():
        for option in opts:
            b_degree.update(set(option))
    min_a = min((len(opts) for opts in options.values()), default=0)
    max_b = max(b_degree.values(), default=0)
    r_prime = max((len(o) for opts in options.values() for o in opts), default=0)
    return min_a, max_b, r_prime


def _graph_matching(options: Mapping[Hashable, Sequence[Option]]) -> Optional[Dict[Hashable, Option]]:
    """Plain bipartite case (every option one B-vertex, capacity 1) via Hopcroft-Karp."""
    graph = nx.Graph()
    left = [('a', a) for a in options]
    graph.add_nodes_from(left, bipartite=0)
    for a, opts in options.items():
        for (b,) in opts:
            graph.add_edge(('a', a), ('b', b))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    return {a: (matching[('a', a)][1],) for a in options}


class _Search:
    """Most-constrained-first backtracking with memoized failure states."""

    def __init__(self, options: Mapping[Hashable, Sequence[Option]], capacities: Mapping[Hashable, int],
                 default_capacity: int, budget: int):
        self.options = {a: [tuple(o) for o in opts] for a, opts in options.items()}
        self.capacities = capacities
        self.default_capacity = default_capacity
        self.budget = budget
        self.load: Counter = Counter()
        self.assignment: Dict[Hashable, Option] = {}
        self.failed = set()
        self.nodes = 0

    def _fits(self, option: Option) -> bool:
        need = Counter(option)
        return all(self.load[b] + k <= self.capacities.get(b, self.default_capacity) for b, k in need.items())

    def _state(self):
        return frozenset(self.assignment), frozenset((b, k) for b, k in self.load.items() if k)

    def run(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            logger.error(f"Finishing matching passed its budget of {self.budget} nodes")
            raise BudgetExhaustedError(f"Matching search exceeded {self.budget} nodes")
        free = [a for a in self.options if a not in self.assignment]
        if not free:
            return True
        state = self._state()
        if state in self.failed:
            return False
        best, best_options = None, None
        for a in free:
            fitting = [o for o in self.options[a] if self._fits(o)]
            if best_options is None or len(fitting) < len(best_options):
                best, best_options = a, fitting
            if not fitting:
                break
        for option in best_options:
            self.assignment[best] = option
            self.load.update(option)
            if self.run():
                return True
            self.load.subtract(option)
            del self.assignment[best]
        self.failed.add(state)
        return False


def finishing_matching(options: Mapping[Hashable, Sequence[Sequence[Hashable]]],
                       capacities: Optional[Mapping[Hashable, int]] = None, default_capacity: int = 1,
                       budget: Optional[int] = None) -> Optional[MatchingResult]:
    """Pick one option (a set of B-vertices) per A-vertex within the B capacities.

    Returns None when the search proves that no A-perfect matching exists.
    The degree condition min d(a) >= 8 r' max d(b) is only reported.

    Raises:
        BudgetExhaustedError: the search ran out of nodes before deciding.
    """
    capacities = dict(capacities or {})
    budget = budget if budget is not None else settings.MATCHING_BUDGET
    min_a, max_b, r_prime = _degrees(options)
    logger.debug(f"Finishing matching: |A|={len(options)}, min d(a)={min_a}, max d(b)={max_b}, r'={r_prime}")

    plain = r_prime <= 1 and default_capacity == 1 and all(c == 1 for c in capacities.values())
    if plain and all(len(o) == 1 for opts in options.values() for o in opts):
        assignment = _graph_matching(options)
        if assignment is None:
            return None
        return MatchingResult(assignment, min_a, max_b, r_prime)

    search = _Search(options, capacities, default_capacity, budget)
    if not search.run():
        logger.info(f"No A-perfect matching after {search.nodes} nodes")
        return None
    return MatchingResult(dict(search.assignment), min_a, max_b, r_prime, nodes=search.nodes)


def is_valid_matching(result: MatchingResult, capacities: Optional[Mapping[Hashable, int]] = None,
                      default_capacity: int = 1) -> bool:
    capacities = capacities or {}
    return all(k <= capacities.get(b, default_capacity) for b, k in result.loads().items())
