from .family import FamilyKind, FunctionFamily
from .support import DriftSpec, DriftingCoordinate, SupportCondition, SupportSchedule
from .ground_truth import GroundTruth
from .dataset import CurveView, DatasetSpec, GridSpec, NoiseSpec, ProcessCurveDataset, SolverSettings
from .metrics import CurveKind, IntegrationRule, MetricReport, ThresholdCurve
from .detectors import AETrainSpec, AnyDetector, DetectorSpec, parse_detector
