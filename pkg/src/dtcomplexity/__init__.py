"""Exact synthesis and complexity analysis of deterministic and nondeterministic decision trees."""
from .analysis import (AnalysisReport, Rule, analyze, check_prop6, count_realizable, independence_dimension,
                       min_consistent_rule, min_same_solution_subsystem, reduction_parameter)
from .classify import LocalType, ReachabilityReport, WorstCaseProfile, local_type, verify_boundary_la_pair, \
    verify_reachability, worstcase_profile
from .errors import *  # noqa: F401,F403
from .families import AttributeFamily, Labeling, canonical_worst_selection, generate
from .oracles import exhaustive_det_oracle, exhaustive_nondet_oracle
from .solvers import (SolveResult, build_reduction_tree, min_depth_det, min_depth_nondet, min_nodes_det,
                      min_nodes_det_budgeted, min_nodes_nondet)
from .table import DecisionTable, make_table
from .tree import DecisionTree, Terminal, TreeMetrics, Work
from .treeops import (TreeClass, VerificationReport, collapse_single_child, is_full_subtree, path_rowset,
                      prune_unrealizable, tree_class, validate)

__version__ = "0.1.0"
