import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from qimg.esop import EsopCover
from qimg.estimators import NeqrCompiler, TTLiteMinimizer
from qimg.validation import check_cover, check_image, check_positions


def test_minimizer_params_and_clone():
    est = TTLiteMinimizer(engine="tree")
    assert est.get_params() == {"engine": "tree"}
    assert clone(est).set_params(engine="packed").engine == "packed"


def test_minimizer_fit_transform():
    X = [["00", "01", "10"], EsopCover(2, ["0-", "10", "11"])]
    est = TTLiteMinimizer()
    out = est.fit_transform(X)
    assert [c.cubes for c in out] == [("0-", "10"), ("--",)]
    assert (est.n_cubes_in_, est.n_cubes_out_) == (6, 3)
    assert est.compression_ratio_ == pytest.approx(50.0)


def test_minimizer_requires_fit():
    with pytest.raises(NotFittedError):
        TTLiteMinimizer().transform([["01"]])


def test_minimizer_in_pipeline():
    pipe = make_pipeline(TTLiteMinimizer(engine="tree"), TTLiteMinimizer(engine="packed"))
    assert pipe.fit_transform([["00", "01", "10"]])[0].cubes == ("0-", "10")


def test_minimizer_bad_engine():
    with pytest.raises(ValueError):
        TTLiteMinimizer(engine="nope").fit([["0"]])


def test_compiler_predicts_image():
    arr = np.random.default_rng(0).integers(0, 256, (5, 7))
    est = NeqrCompiler().fit(arr)
    assert est.score(arr) == 1.0
    assert est.predict([[4, 6], [0, 0]])[:, 0].tolist() == [arr[4, 6], arr[0, 0]]
    assert est.predict([[7, 7]])[0, 0] == 0  # padding
    assert est.to_qasm().startswith("OPENQASM 2.0;")


def test_compiler_rgb_and_params():
    arr = np.random.default_rng(1).integers(0, 256, (4, 4, 3))
    est = NeqrCompiler(decompose=False, n_jobs=2)
    assert est.get_params()["decompose"] is False
    est.fit(arr)
    assert est.predict([[1, 2]])[0].tolist() == arr[1, 2].tolist()
    assert est.layout_.num_ancillas == 0
    assert est.score(arr) == 1.0


def test_compiler_score_detects_other_image():
    arr = np.zeros((4, 4), dtype=int)
    est = NeqrCompiler().fit(arr)
    other = arr.copy()
    other[0, 0] = 9
    assert est.score(other) == pytest.approx(15 / 16)


def test_compiler_not_fitted():
    with pytest.raises(NotFittedError):
        NeqrCompiler().predict([[0, 0]])


def test_check_image():
    img = check_image([[1.0, 2.0]])
    assert img.pixels[0, :, 0].tolist() == [1, 2]
    with pytest.raises(ValueError):
        check_image([[0.5]])
    with pytest.raises(ValueError):
        check_image([[256]])
    with pytest.raises(ValueError):
        check_image([[np.nan]])


def test_check_cover_and_positions():
    assert check_cover(["01", "1-"]).num_vars == 2
    with pytest.raises(TypeError):
        check_cover("01")
    with pytest.raises(ValueError):
        check_cover(["01"], num_vars=3)
    with pytest.raises(ValueError):
        check_positions([[0, 4]], (4, 4))
    with pytest.raises(ValueError):
        check_positions([[0, 1, 2]], (4, 4))
