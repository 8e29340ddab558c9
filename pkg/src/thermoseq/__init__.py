"""Void detection in thermal image sequences: PPT, PCT and HOS maps scored by SNR."""
from .errors import DegenerateError, FormatError, RoiError, SceneError, ThermoError
from .seq_model import FeatureMap, FrameSequence, Roi, load_rois, load_sequence, save_sequence

__all__ = [
    "DegenerateError", "FeatureMap", "FormatError", "FrameSequence", "Roi", "RoiError",
    "SceneError", "ThermoError", "load_rois", "load_sequence", "save_sequence",
]
__version__ = "0.1.0"
