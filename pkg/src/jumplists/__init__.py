"""Randomized median-of-k jumplists with leaf size w."""

from .core import (
    SENTINEL,
    Config,
    InvalidParams,
    JumpList,
    Leaf,
    Node,
    Params,
    Split,
    ValidationReport,
    extract_config,
    from_config,
    from_links,
    from_sorted,
    iter_sorted,
    new,
    parse,
    render,
    size,
    validate,
)
from .rng import RandomSource, coin_flip, draw_jump_index, draw_jump_index_conditional
from .search import SearchResult, classic_search, contains, rank_select, spine_search
from .update import (
    CostRecord,
    DeletedNode,
    delete,
    insert,
    rebalance,
    restore_after_delete,
    restore_after_insert,
    set_jump_and_rebalance,
)

__version__ = "0.1.0"
