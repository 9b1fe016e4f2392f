import json
import os
import zlib
from pathlib import Path

import numpy as np
import pytest

import mlconstructive as mc
from mlconstructive import mlcw
from mlconstructive import raster

DATA = Path(os.environ.get("MLC_DATA_DIR", Path(__file__).resolve().parents[2] / "data" / "tsplib"))


def test_solve_and_gap():
    inst = mc.Instance.load(DATA / "berlin52.tsp")
    assert inst.n == 52
    run = mc.solve(inst, "cw")
    assert sorted(run["order"]) == list(range(52))
    length = sum(inst.cost(a, b) for a, b in zip(run["order"], run["order"][1:] + run["order"][:1]))
    assert length == run["length"]
    assert length >= 7542


def test_held_karp_against_enumeration():
    import itertools

    rng = np.random.default_rng(3)
    inst = mc.Instance.from_points([tuple(p) for p in rng.random((8, 2))])
    _, best = mc.held_karp(inst)
    brute = min(
        inst.tour_length([0, *perm]) for perm in itertools.permutations(range(1, 8))
    )
    assert best == pytest.approx(brute, abs=1e-12)


def test_missing_inputs_raise():
    inst = mc.Instance.load(DATA / "burma14.tsp")
    with pytest.raises(mc.MissingInputError):
        mc.solve(inst, "ml-sc")
    with pytest.raises(mc.ContractError):
        mc.solve(inst, "nope")


def test_render_shape_and_channels():
    inst = mc.Instance.load(DATA / "berlin52.tsp")
    img = mc.render(inst, 3, 7, [(3, 7)], 10)
    assert img.shape == (3, 96, 96) and img.dtype == np.float32
    assert set(np.unique(img)) <= {0.0, 1.0}
    assert img[1].sum() > 0 and img[0].sum() > 0


def test_blob_round_trip(tmp_path):
    img = (np.arange(27648, dtype=np.float32) % 7).reshape(3, 96, 96)
    mc.write_blob(tmp_path / "a.blob", img)
    raw = (tmp_path / "a.blob").read_bytes()
    assert len(raw) == 110592
    # Channel-major: the first 96*96 floats are channel 0.
    assert np.frombuffer(raw[:8], dtype="<f4").tolist() == [0.0, 1.0]
    assert np.array_equal(mc.read_blob(tmp_path / "a.blob"), img)


def test_mlcw_cross_runtime(tmp_path):
    net = mc.Network.random(seed=4, stem=8)
    net.save(tmp_path / "c.mlcw")
    records = mlcw.read(tmp_path / "c.mlcw")
    assert list(records)[0] == "arch"
    assert records["arch"].tolist() == [96, 3, 8, 4, 9, 2]
    assert records["block4.conv2.weight"].shape == (128, 128, 3, 3)
    # Python writer is byte-identical to the C++ writer.
    assert mlcw.dumps(records) == (tmp_path / "c.mlcw").read_bytes()
    records["meta.lr"] = np.array([1e-3], dtype=np.float32)
    mlcw.write(tmp_path / "p.mlcw", records)
    again = mc.Network.load(tmp_path / "p.mlcw")
    assert again.parameter_count == net.parameter_count


def test_mlcw_corruption_detected(tmp_path):
    good = mlcw.dumps({"arch": np.array([96, 3, 8, 4, 9, 2], dtype=np.float32)})
    flipped = bytearray(good)
    flipped[-6] ^= 0x01
    with pytest.raises(mlcw.MLCWError, match="checksum"):
        mlcw.loads(bytes(flipped))
    with pytest.raises(mlcw.MLCWError, match="magic"):
        mlcw.loads(b"XXXX" + good[4:])
    with pytest.raises(mlcw.MLCWError, match="truncated"):
        mlcw.loads(good[:-9])
    (tmp_path / "bad.mlcw").write_bytes(bytes(flipped))
    with pytest.raises(mc.WeightError):
        mc.Network.load(tmp_path / "bad.mlcw")
    # Checksum is plain zlib CRC32 of the body.
    assert int.from_bytes(good[-4:], "little") == zlib.crc32(good[:-4])


@pytest.fixture(scope="module")
def fixtures(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    assert mc.write_fixtures(d) == 32
    doc = json.loads((d / "fixtures.json").read_text())
    return d, doc["fixtures"]


def test_fixture_render_parity(fixtures):
    d, items = fixtures
    for item in items:
        i, j = item["edge"]
        ours = raster.render(item["coords"], i, j, [tuple(e) for e in item["drawn"]], item["k"])
        theirs = (d / item["blob"]).read_bytes()
        assert ours.astype("<f4").tobytes() == theirs, item["blob"]


def test_fixture_logit_parity(fixtures, tmp_path):
    torch = pytest.importorskip("torch")
    from mlconstructive.model import EdgeClassifier

    d, items = fixtures
    torch.manual_seed(0)
    model = EdgeClassifier()
    with torch.no_grad():
        for p in model.parameters():
            p.add_(0.05 * torch.randn_like(p))
    model.eval()
    model.save(tmp_path / "t.mlcw", meta={"steps": 0})
    net = mc.Network.load(tmp_path / "t.mlcw")
    images = np.stack([mc.read_blob(d / item["blob"]) for item in items])
    with torch.no_grad():
        ref = model(torch.from_numpy(images)).double().numpy()
    worst = 0.0
    for img, want in zip(images, ref):
        got = net.predict(img)
        worst = max(worst, float(np.max(np.abs(np.array(got["logits"]) - want))))
        assert sum(got["probabilities"]) == pytest.approx(1.0, abs=1e-6)
    assert worst < 1e-3
