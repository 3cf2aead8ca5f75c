"""
Sequence file formats for the ternary DHT toolkit
Saves and loads sequences as JSON or CSV and exports autocorrelation profiles
"""

import csv
import json
import os
from typing import Dict, List

from sequences import FAMILIES, TernarySequence, autocorrelation_profile


class SequenceFormatError(ValueError):
    """File content does not describe a ternary sequence"""


def sequence_to_dict(seq: TernarySequence) -> Dict:
    params = {k: v for k, v in seq.provenance.items() if k != "modulus"}
    return {
        "n": seq.n,
        "modulus": seq.provenance.get("modulus"),
        "family": seq.family,
        "params": params,
        "digits": seq.to_string(),
    }


def save_sequence(seq: TernarySequence, file_path: str) -> str:
    """
    Write a sequence to file_path
    .csv gets index,digit rows; anything else gets the JSON document
    """
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    if os.path.splitext(file_path)[1].lower() == ".csv":
        with open(file_path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["index", "digit"])
            writer.writerows((i, int(d)) for i, d in enumerate(seq.digits))
    else:
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(sequence_to_dict(seq), f, indent=2)
            f.write("\n")
    return file_path


def _degree_for_period(period: int) -> int:
    n, size = 0, 1
    while size - 1 < period:
        n += 1
        size *= 3
    if size - 1 != period:
        raise SequenceFormatError(f"period {period} is not of the form 3^n - 1")
    return n


def load_sequence_json(file_path: str) -> TernarySequence:
    with open(file_path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SequenceFormatError(f"{file_path}: {exc}") from None

    if not isinstance(data, dict) or "digits" not in data:
        raise SequenceFormatError("JSON format not recognized. Expected an object with a 'digits' key.")

    digits = str(data["digits"])
    n = int(data.get("n") or _degree_for_period(len(digits)))
    family = data.get("family", "custom")
    if family not in FAMILIES:
        raise SequenceFormatError(f"unknown family {family!r}")
    provenance = dict(data.get("params") or {})
    if data.get("modulus") is not None:
        provenance["modulus"] = data["modulus"]
    try:
        return TernarySequence.from_string(n, digits, family, provenance)
    except ValueError as exc:
        raise SequenceFormatError(str(exc)) from None


def load_sequence_csv(file_path: str) -> TernarySequence:
    digits: List[int] = []
    with open(file_path, "r", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "digit" not in reader.fieldnames:
            raise SequenceFormatError("CSV needs a 'digit' column")
        for row in reader:
            value = (row.get("digit") or "").strip()
            if value not in ("0", "1", "2"):
                raise SequenceFormatError(f"bad digit {value!r} at row {len(digits)}")
            digits.append(int(value))
    return TernarySequence(_degree_for_period(len(digits)), digits)


def load_sequence(file_path: str) -> TernarySequence:
    """Load a sequence file, picking the format from the extension (CSV first, then JSON otherwise)"""
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"Sequence file not found: {file_path}")

    ext = os.path.splitext(file_path)[1].lower()
    if ext == ".csv":
        return load_sequence_csv(file_path)
    if ext == ".json":
        return load_sequence_json(file_path)
    try:
        return load_sequence_csv(file_path)
    except SequenceFormatError:
        return load_sequence_json(file_path)


def autocorrelation_rows(seq: TernarySequence, jobs: int = 1) -> List[Dict]:
    a, b = autocorrelation_profile(seq, jobs)
    return [{"tau": tau, "re": int(a[tau]), "omegaCoeff": int(b[tau])} for tau in range(seq.period)]


def autocorrelation_csv(seq: TernarySequence, file_path: str, jobs: int = 1) -> str:
    """One tau,re,omegaCoeff row per shift"""
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    with open(file_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=["tau", "re", "omegaCoeff"])
        writer.writeheader()
        writer.writerows(autocorrelation_rows(seq, jobs))
    return file_path


if __name__ == "__main__":
    from field import build_field
    from sequences import lin_sequence

    path = save_sequence(lin_sequence(build_field(3)), "sequences/lin_n3.json")
    print(f"Saved {path}:", load_sequence(path))
