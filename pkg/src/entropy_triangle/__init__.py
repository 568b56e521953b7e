"""Entropy balance decompositions and entropy triangles.

Quantities are plug-in Shannon entropies in bits over sparse discrete
joint distributions. The typical path is::

    J = build_joint(codes, cardinalities)
    part = Partition(x_vars, y_vars)
    coord = normalize_aggregate(channel_balance(J, part))
"""
from .balance import (
    ChannelDecomposition,
    SplitDecomposition,
    TriangleCoord,
    cbet_from_confusion,
    channel_balance,
    classify_region,
    normalize_aggregate,
    normalize_split,
    split_balance,
)
from .datasets import DataTable, builtin, load_csv, write_csv
from .discretize import Codebook, encode_categorical, fit_discretize
from .errors import (
    ConfigError,
    ConsistencyError,
    DataError,
    DegenerateDomainError,
    DomainError,
    EmptyInputError,
    EntropyTriangleError,
)
from .joint import (
    JointDistribution,
    Partition,
    build_joint,
    conditional_entropy,
    entropy,
    from_mass,
    from_table,
    marginalize,
    uniform_entropy,
)
from .measures import (
    SourceDecomposition,
    binding_information,
    binding_information_routes,
    bound_information,
    co_information,
    delta_uniformity,
    dual_total_correlation,
    kl_multiinformation,
    mutual_information,
    source_decomposition,
    source_vi,
    total_correlation,
    variation_of_information_channel,
)
from .ternary import PlotPoint, PlotSpec, project, render_svg
from .transforms import (
    IcaModel,
    IcaParams,
    PcaModel,
    fastica,
    log_transform,
    pca_fit,
    pca_project,
    ranking_sweep,
)

__version__ = "0.1.0"
