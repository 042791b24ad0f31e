from .table import (
    BoundReport,
    GroupTable,
    enumerate_group,
    load_table,
    min_conjugate_length,
    optimal_rdu_bound,
    save_table,
)
from .kernels import DEFAULT as DEFAULT_KERNEL, load_kernel

__all__ = [
    "BoundReport",
    "GroupTable",
    "enumerate_group",
    "load_table",
    "min_conjugate_length",
    "optimal_rdu_bound",
    "save_table",
    "DEFAULT_KERNEL",
    "load_kernel",
]
