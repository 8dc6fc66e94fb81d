"""Semantic microaggregation of set-valued records (query logs) into adaptive k-anonymous clusters."""

__version__ = "0.1.0"

from .taxonomy import Taxonomy, TaxonomyError, load_taxonomy  # noqa: E402
from .ingest import QueryRecord, RawLogLine, extract_attributes, parse_log  # noqa: E402
from .semantics import DedupedRecord, PairSimilarityMatrix, dedup_record, matching_pairs, pair_matrix  # noqa: E402
from .distance import DatasetCentroid, PairDistance, dataset_centroid, record_distance  # noqa: E402
from .clustering import Cluster, ClusteringConfig, ClusteringResult, adaptive_mdav, cluster_centroid  # noqa: E402
from .anonymizer import AnonymizedRecord, anonymize_cluster  # noqa: E402
from .metrics import MetricsReport, cohesion, information_loss, sse, sst  # noqa: E402
from .pipeline import run_pipeline  # noqa: E402
