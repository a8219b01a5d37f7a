"""Heavy-subgraph conditions for Hamiltonicity, checked exhaustively on small graphs."""

from .graph import (Cycle, Graph, Graph6Error, GraphError, Path, complete, complete_bipartite,
                    cycle_graph, is_2connected, parse_graph6, path_graph, petersen, star,
                    to_graph6)
from .genlib import (canonical_form, canonical_labeling, enumerate_graphs, ingest)
from .patterns import CATALOG, K14, Pattern, find_induced_embeddings, get_pattern, is_free
from .heavy import (ConditionProfile, heavy_report, is_f_heavy, is_o_heavy, profile,
                    virtual_edges)
from .hamilton import (cycle_through_set, is_hamiltonian, is_heavy_cycle, is_nonextendable,
                       longest_cycle)
from .ocycle import ore_closure_edge_count, realize, validate_ocycle
from .composed import carrier_hamilton_path, find_good_pair, is_composed, spanning_pair

__version__ = "0.1.0"
