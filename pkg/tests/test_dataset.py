import json

import numpy as np
import pytest
from pydantic import ValidationError

from awmvc.clustering import KMeansConfig, kmeans
from awmvc.dataset import (
    MultiViewDataset,
    SyntheticSpec,
    ViewMatrix,
    from_arrays,
    generate_synthetic,
    load_dataset,
    normalize_views,
    remap_labels,
    save_dataset,
)
from awmvc.dataset.formats import BinaryViewFormat, ViewFormatRegistry, get_format
from awmvc.errors import DatasetIOError, DatasetValidationError, LabelError
from awmvc.metrics import acc


def _write_meta(directory, meta):
    with open(directory / "meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f)


class TestTypes:
    def test_view_rejects_non_finite(self):
        data = np.ones((2, 3))
        data[1, 1] = np.inf
        with pytest.raises(DatasetValidationError):
            ViewMatrix(name="v", data=data)

    def test_view_is_read_only(self):
        view = ViewMatrix(name="v", data=np.zeros((2, 3)))
        with pytest.raises(ValueError):
            view.data[0, 0] = 1.0

    def test_column_count_mismatch(self):
        with pytest.raises(DatasetValidationError):
            MultiViewDataset(views=(ViewMatrix("a", np.zeros((2, 5))), ViewMatrix("b", np.zeros((2, 6)))))

    def test_labels_must_cover_every_class(self):
        with pytest.raises(DatasetValidationError):
            MultiViewDataset(views=(ViewMatrix("a", np.zeros((2, 3))),), labels=np.array([0, 2, 2]))

    def test_summary(self, make_dataset):
        ds = make_dataset(0, n=12, view_dims=(3, 2), k=4)
        assert ds.summary() == {"name": "random-0", "n": 12, "V": 2, "dims": [3, 2], "k_true": 4}


class TestRemapLabels:
    def test_first_occurrence_order(self):
        np.testing.assert_array_equal(remap_labels(["b", "a", "b", "c"]), [0, 1, 0, 2])

    def test_sparse_integers(self):
        np.testing.assert_array_equal(remap_labels([10, 3, 10, 7]), [0, 1, 0, 2])

    def test_contiguous_labels_kept(self):
        np.testing.assert_array_equal(remap_labels([2, 0, 1, 0]), [2, 0, 1, 0])


class TestLoadDataset:
    def test_two_views_with_labels(self, tmp_path):
        fmt = get_format("csv")
        fmt.write(tmp_path / "a.csv", np.arange(12, dtype=float).reshape(3, 4))
        fmt.write(tmp_path / "b.csv", np.ones((2, 4)))
        (tmp_path / "labels.csv").write_text("1\n0\n1\n0\n")
        _write_meta(tmp_path, {
            "name": "tiny",
            "n": 4,
            "views": [
                {"name": "a", "d": 3, "file": "a.csv", "format": "csv"},
                {"name": "b", "d": 2, "file": "b.csv", "format": "csv"},
            ],
            "labels_file": "labels.csv",
        })
        ds = load_dataset(tmp_path)
        assert ds.n_views == 2 and ds.n == 4
        assert [v.name for v in ds.views] == ["a", "b"]
        np.testing.assert_array_equal(ds.labels, [1, 0, 1, 0])

    def test_flower17_shaped_metadata(self, tmp_path):
        gen = np.random.default_rng(17)
        views = [gen.standard_normal((int(d), 1360)) for d in gen.integers(5, 40, size=7)]
        ds = from_arrays(views, labels=np.arange(1360) % 17, name="flower17-shaped")
        loaded = load_dataset(save_dataset(ds, tmp_path / "f17"))
        assert (loaded.n, loaded.n_views, loaded.k_true) == (1360, 7, 17)

    def test_column_mismatch_between_views(self, tmp_path):
        fmt = BinaryViewFormat()
        fmt.write(tmp_path / "a.bin", np.zeros((2, 5)))
        fmt.write(tmp_path / "b.bin", np.zeros((2, 6)))
        _write_meta(tmp_path, {
            "n": 5,
            "views": [{"name": "a", "d": 2, "file": "a.bin"}, {"name": "b", "d": 2, "file": "b.bin"}],
        })
        with pytest.raises(DatasetValidationError):
            load_dataset(tmp_path)

    def test_declared_rows_must_match_payload(self, tmp_path):
        BinaryViewFormat().write(tmp_path / "a.bin", np.zeros((3, 4)))
        _write_meta(tmp_path, {"n": 4, "views": [{"name": "a", "d": 2, "file": "a.bin"}]})
        with pytest.raises(DatasetValidationError):
            load_dataset(tmp_path)

    def test_label_count_must_match_n(self, tmp_path):
        BinaryViewFormat().write(tmp_path / "a.bin", np.zeros((1, 3)))
        (tmp_path / "labels.csv").write_text("0\n1\n")
        _write_meta(tmp_path, {"n": 3, "views": [{"file": "a.bin"}], "labels_file": "labels.csv"})
        with pytest.raises(DatasetValidationError):
            load_dataset(tmp_path)

    def test_unparseable_label(self, tmp_path):
        BinaryViewFormat().write(tmp_path / "a.bin", np.zeros((1, 2)))
        (tmp_path / "labels.csv").write_text("0\ncat\n")
        _write_meta(tmp_path, {"n": 2, "views": [{"file": "a.bin"}], "labels_file": "labels.csv"})
        with pytest.raises(LabelError):
            load_dataset(tmp_path)

    @pytest.mark.parametrize(
        "meta",
        [
            {"n": 4, "views": ["view0.bin"]},
            {"n": 4, "views": [{"name": "a"}]},
            {"n": "4", "views": [{"file": "a.bin"}]},
            {"n": 0, "views": [{"file": "a.bin"}]},
            {"n": 4, "views": []},
            {"views": [{"file": "a.bin"}]},
            [{"file": "a.bin"}],
        ],
    )
    def test_malformed_metadata(self, tmp_path, meta):
        BinaryViewFormat().write(tmp_path / "a.bin", np.zeros((1, 4)))
        _write_meta(tmp_path, meta)
        with pytest.raises(DatasetValidationError):
            load_dataset(tmp_path)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(DatasetIOError):
            load_dataset(tmp_path / "nope")

    def test_missing_view_file(self, tmp_path):
        _write_meta(tmp_path, {"n": 2, "views": [{"file": "gone.bin"}]})
        with pytest.raises(DatasetIOError):
            load_dataset(tmp_path)

    def test_corrupt_binary_header(self, tmp_path):
        (tmp_path / "a.bin").write_bytes(b"NOPE" + bytes(20))
        _write_meta(tmp_path, {"n": 1, "views": [{"file": "a.bin"}]})
        with pytest.raises(DatasetValidationError):
            load_dataset(tmp_path)


class TestSaveDataset:
    def test_binary_round_trip_is_bit_exact(self, tmp_path, make_dataset):
        ds = make_dataset(1)
        loaded = load_dataset(save_dataset(ds, tmp_path / "bin", fmt="bin"))
        for a, b in zip(ds.views, loaded.views):
            np.testing.assert_array_equal(a.data, b.data)
        np.testing.assert_array_equal(ds.labels, loaded.labels)

    def test_csv_round_trip(self, tmp_path, make_dataset):
        ds = make_dataset(2)
        loaded = load_dataset(save_dataset(ds, tmp_path / "csv", fmt="csv"))
        for a, b in zip(ds.views, loaded.views):
            assert np.max(np.abs(a.data - b.data)) <= 1e-12

    def test_without_labels(self, tmp_path, make_dataset):
        directory = save_dataset(make_dataset(3, k=None), tmp_path / "unlabeled")
        meta = json.loads((directory / "meta.json").read_text())
        assert "labels_file" not in meta
        assert load_dataset(directory).labels is None

    def test_unknown_format(self, tmp_path, make_dataset):
        with pytest.raises(DatasetValidationError):
            save_dataset(make_dataset(4), tmp_path / "x", fmt="parquet")

    def test_registry_names(self):
        assert ViewFormatRegistry.names() == ["bin", "csv"]


class TestSynthetic:
    def test_zero_noise_clusters_coincide(self):
        spec = SyntheticSpec(n=100, V=3, k_true=5, latent_dim=10, noise_sigma=0.0)
        ds = generate_synthetic(spec)
        for view in ds.views:
            for c in range(5):
                members = view.data[:, ds.labels == c]
                assert np.max(np.abs(members - members[:, :1])) <= 1e-12

    def test_seed_determinism(self):
        spec = SyntheticSpec(n=50, V=2, k_true=3, seed=7)
        a, b = generate_synthetic(spec), generate_synthetic(spec)
        for va, vb in zip(a.views, b.views):
            np.testing.assert_array_equal(va.data, vb.data)

    def test_round_robin_labels(self):
        ds = generate_synthetic(SyntheticSpec(n=7, V=1, k_true=3))
        np.testing.assert_array_equal(ds.labels, [0, 1, 2, 0, 1, 2, 0])

    def test_view_dims(self):
        ds = generate_synthetic(SyntheticSpec(n=20, V=3, k_true=2, latent_dim=4, view_dims=[5, 6, 7]))
        assert ds.dims == [5, 6, 7]
        assert generate_synthetic(SyntheticSpec(n=20, V=2, k_true=2, latent_dim=4)).dims == [8, 8]

    def test_fewer_samples_than_clusters(self):
        with pytest.raises(ValidationError):
            SyntheticSpec(n=3, k_true=5)

    def test_view_dims_length(self):
        with pytest.raises(ValidationError):
            SyntheticSpec(n=10, V=2, k_true=2, view_dims=[3])

    def test_separability_oracle(self):
        spec = SyntheticSpec(
            n=1000, V=3, k_true=5, latent_dim=20, view_dims=[50, 40, 30],
            noise_sigma=0.0, center_spread=5.0, seed=0,
        )
        ds = generate_synthetic(spec)
        labels = kmeans(ds.views[0].data, KMeansConfig(k=5, restarts=10)).labels
        assert acc(labels, ds.labels) == 1.0


class TestTransforms:
    def test_samples_as_rows(self):
        ds = from_arrays([np.zeros((6, 2)), np.ones((6, 3))], samples_as_rows=True)
        assert ds.n == 6 and ds.dims == [2, 3]

    def test_labels_remapped(self):
        ds = from_arrays([np.zeros((1, 4))], labels=["x", "y", "x", "z"])
        np.testing.assert_array_equal(ds.labels, [0, 1, 0, 2])

    def test_view_name_count(self):
        with pytest.raises(DatasetValidationError):
            from_arrays([np.zeros((1, 4))], view_names=["a", "b"])

    def test_per_sample_l2(self):
        data = np.array([[3.0, 0.0, 1.0], [4.0, 0.0, 0.0]])
        ds = normalize_views(from_arrays([data]), "per-sample-l2")
        np.testing.assert_allclose(ds.views[0].data, [[0.6, 0.0, 1.0], [0.8, 0.0, 0.0]])

    def test_none_is_identity(self, make_dataset):
        ds = make_dataset(5)
        assert normalize_views(ds, "none") is ds

    def test_unknown_mode(self, make_dataset):
        with pytest.raises(DatasetValidationError):
            normalize_views(make_dataset(5), "zscore")
