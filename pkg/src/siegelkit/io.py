"""JSON matrix files with split real and imaginary parts.

Floats are written with Python's shortest round-trip repr, so a file read
back gives bit-identical matrices.
"""

from dataclasses import dataclass
import json

import numpy as np

from .errors import ContractViolation

FORMAT_ERRORS = (ValueError, KeyError, TypeError, json.JSONDecodeError)


@dataclass
class MatrixFile:
    dim: int
    matrices: list
    model: str = None

    def to_json(self):
        doc = {"dim": self.dim, "matrices": [encode_matrix(M) for M in self.matrices]}
        if self.model is not None:
            doc["model"] = self.model
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        d = int(doc["dim"])
        mats = [decode_matrix(m, d) for m in doc["matrices"]]
        return cls(d, mats, doc.get("model"))


def encode_matrix(M):
    M = np.asarray(M, dtype=np.complex128)
    return {"re": M.real.tolist(), "im": M.imag.tolist()}


def decode_matrix(entry, d):
    re = np.asarray(entry["re"], dtype=float)
    im = np.asarray(entry.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != (d, d) or im.shape != (d, d):
        raise ContractViolation(f"matrix shape {re.shape}/{im.shape} does not match dim {d}")
    return re + 1j * im


def read_matrix_file(path):
    with open(path) as fh:
        return MatrixFile.from_json(fh.read())


def write_matrix_file(path, mf):
    with open(path, "w") as fh:
        fh.write(mf.to_json())
        fh.write("\n")
