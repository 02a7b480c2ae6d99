from .contingency import ContingencyTable, check_label_pair, contingency_table
from .matching import hungarian_max
from .scores import METRIC_VARIANTS, acc, as_percentages, evaluate, fscore, nmi, purity

__all__ = [
    "ContingencyTable",
    "check_label_pair",
    "contingency_table",
    "hungarian_max",
    "METRIC_VARIANTS",
    "acc",
    "as_percentages",
    "evaluate",
    "fscore",
    "nmi",
    "purity",
]
