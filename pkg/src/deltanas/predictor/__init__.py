from .config import Backend, TrainConfig
from .experiments import AdjacencyPredictor, EncodingRow, SweepRow, compare_encodings, loss_vs_edit_distance, \
    neighbor_ranking_tau, train_adjacency
from .files import LayerRecord, ModelRecord, format_model, load_model, parse_model, save_model
from .metrics import kendall_tau, mean_squared_error
from .model import DeltaPredictor, PredictorModel, feature_width, fit_network, predict_delta, train
from .network import Network, fit_mlp, fit_ridge, grad_check, init_network, loss_and_gradients

__all__ = ("Backend", "TrainConfig", "AdjacencyPredictor", "EncodingRow", "SweepRow", "compare_encodings",
           "loss_vs_edit_distance", "neighbor_ranking_tau", "train_adjacency", "LayerRecord", "ModelRecord",
           "format_model", "load_model", "parse_model", "save_model", "kendall_tau", "mean_squared_error",
           "DeltaPredictor", "PredictorModel", "feature_width", "fit_network", "predict_delta", "train", "Network",
           "fit_mlp", "fit_ridge", "grad_check", "init_network", "loss_and_gradients")
