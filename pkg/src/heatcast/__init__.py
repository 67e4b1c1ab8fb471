"""District-heating load forecasting from wavelet scalograms with a small CNN."""

from .calendars import Calendar, CalendarDay, meteorological_season
from .dataset import Example, InputTensor, build_dataset, encode_day_flags, make_example
from .metrics import EvalReport, ForecastWindow, evaluate, mape, rmse, seasonal_naive
from .network import Model, ModelConfig, forward, mse_loss, predict_window
from .series import (HourlySeries, Scaler, SeriesKind, SplitSpec, accumulate,
                     aggregate_zone, clean_and_differentiate, parse_series_csv,
                     scaler_fit, split_dataset)
from .synth import SynthConfig, generate
from .training import AdamState, TrainResult, adam_step, train
from .wavelet import Boundary, Scalogram, WaveletConfig, cwt, discretize_wavelet, ricker_eval

__version__ = "0.1.0"

__all__ = [
    "Calendar", "CalendarDay", "meteorological_season",
    "Example", "InputTensor", "build_dataset", "encode_day_flags", "make_example",
    "EvalReport", "ForecastWindow", "evaluate", "mape", "rmse", "seasonal_naive",
    "Model", "ModelConfig", "forward", "mse_loss", "predict_window",
    "HourlySeries", "Scaler", "SeriesKind", "SplitSpec", "accumulate",
    "aggregate_zone", "clean_and_differentiate", "parse_series_csv",
    "scaler_fit", "split_dataset",
    "SynthConfig", "generate",
    "AdamState", "TrainResult", "adam_step", "train",
    "Boundary", "Scalogram", "WaveletConfig", "cwt", "discretize_wavelet", "ricker_eval",
    "__version__",
]
