# sweep/__init__.py

from .dataset import (
    FLAGS_COLUMN,
    Dataset,
    DatasetFormat,
    DatasetIOError,
    format_dataset,
    read_dataset,
    write_dataset,
)
from .plan import AxisRange, PlanError, ScanPlan, read_plan_file
from .quantity_abc import Quantity, existing_quantities, get_quantity, register_quantity
from .quantity_configs import (
    CONFIG_FOR_CODE,
    BaseQuantityConfig,
    ClassifyConfig,
    EchoConfig,
    FidelityStepConfig,
    GapConfig,
    OverlapConfig,
    QuantityCode,
    SusceptibilityConfig,
)
from .runner import WORKERS_ENV, default_workers, evaluate_point, run_scan, scan_metadata, scan_schema
from .tables import (
    TIMESTAMP_ENV,
    base_metadata,
    cross_check_dataset,
    dataset_timestamp,
    mode_table_dataset,
    overlap_scan_dataset,
    point_dataset,
    qgt_dataset,
    revivals_dataset,
    series_dataset,
)

__all__ = [
    "CONFIG_FOR_CODE",
    "FLAGS_COLUMN",
    "WORKERS_ENV",
    "AxisRange",
    "BaseQuantityConfig",
    "ClassifyConfig",
    "Dataset",
    "DatasetFormat",
    "DatasetIOError",
    "EchoConfig",
    "FidelityStepConfig",
    "GapConfig",
    "OverlapConfig",
    "PlanError",
    "Quantity",
    "QuantityCode",
    "ScanPlan",
    "SusceptibilityConfig",
    "TIMESTAMP_ENV",
    "base_metadata",
    "cross_check_dataset",
    "dataset_timestamp",
    "default_workers",
    "evaluate_point",
    "existing_quantities",
    "format_dataset",
    "get_quantity",
    "mode_table_dataset",
    "overlap_scan_dataset",
    "point_dataset",
    "qgt_dataset",
    "read_dataset",
    "read_plan_file",
    "register_quantity",
    "revivals_dataset",
    "run_scan",
    "scan_metadata",
    "scan_schema",
    "series_dataset",
    "write_dataset",
]
