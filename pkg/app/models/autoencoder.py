import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
import torch
import torch.nn as nn
import torch.optim as optim

from app.entities.detectors import AETrainSpec
from app.errors import TrainingFailure

log = logging.getLogger(__name__)


class CurveAutoencoder(nn.Module):
    """Curve of m samples -> hidden -> latent k -> hidden -> m, tanh hidden layers and linear output."""

    def __init__(self, input_size: int, hidden_width: int, latent_dim: int):
        super().__init__()
        self.encoder = nn.Sequential(
            nn.Linear(input_size, hidden_width),
            nn.Tanh(),
            nn.Linear(hidden_width, latent_dim),
        )
        self.decoder = nn.Sequential(
            nn.Linear(latent_dim, hidden_width),
            nn.Tanh(),
            nn.Linear(hidden_width, input_size),
        )

    def forward(self, x):
        return self.decoder(self.encoder(x))

    def reset_parameters(self, generator: torch.Generator):
        for layer in self.modules():
            if isinstance(layer, nn.Linear):
                bound = 1.0 / math.sqrt(layer.in_features)
                nn.init.uniform_(layer.weight, -bound, bound, generator=generator)
                nn.init.uniform_(layer.bias, -bound, bound, generator=generator)


@dataclass
class AEModel:
    network: CurveAutoencoder
    low: float
    high: float
    history: List[float] = field(default_factory=list)

    def normalize(self, curves: np.ndarray) -> torch.Tensor:
        span = self.high - self.low
        scaled = (np.asarray(curves, dtype=float) - self.low) / (span if span > 0 else 1.0)
        return torch.tensor(scaled, dtype=torch.float32)

    def reconstruct(self, curves: np.ndarray) -> np.ndarray:
        """Reconstruction in normalized units."""
        self.network.eval()
        with torch.no_grad():
            return self.network(self.normalize(curves)).double().numpy()


def ae_train(curves: np.ndarray, spec: AETrainSpec) -> AEModel:
    curves = np.asarray(curves, dtype=float)
    T, m = curves.shape
    if T < spec.batch_size:
        raise ValueError(f'{T} curves are fewer than batch_size={spec.batch_size}')

    generator = torch.Generator().manual_seed(spec.seed)
    network = CurveAutoencoder(m, spec.hidden_width, spec.latent_dim)
    network.reset_parameters(generator)
    model = AEModel(network=network, low=float(curves.min()), high=float(curves.max()))
    data = model.normalize(curves)

    criterion = nn.MSELoss()
    optimizer = optim.Adam(network.parameters(), lr=spec.learning_rate)
    network.train()
    for epoch in range(spec.epochs):
        order = torch.randperm(T, generator=generator)
        total = 0.0
        for start in range(0, T, spec.batch_size):
            batch = data[order[start:start + spec.batch_size]]
            loss = criterion(network(batch), batch)
            if not torch.isfinite(loss):
                raise TrainingFailure(f'non-finite reconstruction loss in epoch {epoch + 1}')
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += loss.item() * len(batch)
        model.history.append(total / T)
        log.debug('epoch %d/%d loss %.6f', epoch + 1, spec.epochs, model.history[-1])
    return model


def ae_encode(model: AEModel, curves: np.ndarray) -> np.ndarray:
    model.network.eval()
    with torch.no_grad():
        latents = model.network.encoder(model.normalize(curves))
    return latents.double().numpy()
