"""Torch mirror of the residual edge classifier, loadable from MLCW files."""

from __future__ import annotations

from collections import OrderedDict

import numpy as np
import torch
from torch import nn

from . import mlcw


class Block(nn.Module):
    def __init__(self, cin: int, cout: int):
        super().__init__()
        self.conv1 = nn.Conv2d(cin, cout, 3, stride=2, padding=1)
        self.conv2 = nn.Conv2d(cout, cout, 3, stride=1, padding=1)
        self.shortcut = nn.Conv2d(cin, cout, 1, stride=2, padding=0)

    def forward(self, x):
        y = self.conv2(torch.relu(self.conv1(x)))
        return torch.relu(y + self.shortcut(x))


class EdgeClassifier(nn.Module):
    """Output index 1 is "edge belongs to the optimal tour"."""

    def __init__(self, image=96, channels=3, stem=64, blocks=4, fc=9, outputs=2):
        super().__init__()
        self.arch = (image, channels, stem, blocks, fc, outputs)
        self.stem = nn.Conv2d(channels, stem, 3, stride=1, padding=1)
        widths = [stem << b for b in range(blocks + 1)]
        self.blocks = nn.ModuleList(Block(widths[b], widths[b + 1]) for b in range(blocks))
        self.fc = nn.Linear(widths[-1], fc)
        self.out = nn.Linear(fc, outputs)

    def forward(self, x):
        x = torch.relu(self.stem(x))
        for blk in self.blocks:
            x = blk(x)
        x = x.mean(dim=(2, 3))
        return self.out(torch.relu(self.fc(x)))

    def records(self) -> "OrderedDict[str, np.ndarray]":
        rec = OrderedDict(arch=np.asarray(self.arch, dtype=np.float32))
        for name, tensor in self._named():
            rec[name] = tensor.detach().cpu().numpy().astype(np.float32)
        return rec

    def _named(self):
        yield "stem.weight", self.stem.weight
        yield "stem.bias", self.stem.bias
        for b, blk in enumerate(self.blocks, start=1):
            for part in ("conv1", "conv2", "shortcut"):
                layer = getattr(blk, part)
                yield f"block{b}.{part}.weight", layer.weight
                yield f"block{b}.{part}.bias", layer.bias
        for part in ("fc", "out"):
            layer = getattr(self, part)
            yield f"{part}.weight", layer.weight
            yield f"{part}.bias", layer.bias

    @classmethod
    def from_records(cls, records) -> "EdgeClassifier":
        if "arch" not in records:
            raise mlcw.MLCWError("missing record", "arch")
        model = cls(*(int(v) for v in records["arch"]))
        with torch.no_grad():
            for name, param in model._named():
                if name not in records:
                    raise mlcw.MLCWError("missing record", name)
                value = torch.from_numpy(np.asarray(records[name], dtype=np.float32))
                if tuple(value.shape) != tuple(param.shape):
                    raise mlcw.MLCWError("shape inconsistency", f"{name}: {tuple(value.shape)}")
                param.copy_(value)
        return model

    @classmethod
    def load(cls, path) -> "EdgeClassifier":
        return cls.from_records(mlcw.read(path))

    def save(self, path, meta: dict | None = None) -> None:
        rec = self.records()
        for key, value in (meta or {}).items():
            rec[f"meta.{key}"] = np.atleast_1d(np.asarray(value, dtype=np.float32))
        mlcw.write(path, rec)
