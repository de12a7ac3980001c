"""Point-source localization from sparse partial-aperture Helmholtz measurements.

Thin Python facade over the C++ core: forward simulation, the sampling-grid
indicator, localization error bounds, classical interpolation baselines, and
the branch-trunk operator surrogate.
"""

import importlib.util as _ilu
import os as _os
import sys as _sys


def _load_core():
    try:
        from . import _core  # installed wheel layout

        return _core
    except ImportError:
        pass
    # Development layout: the extension lives in the CMake build tree and
    # HELIOS_EXT_DIR points at it.
    ext_dir = _os.environ.get("HELIOS_EXT_DIR")
    if not ext_dir:
        raise ImportError(
            "helios._core not built; install the package or set HELIOS_EXT_DIR "
            "to the directory containing the extension"
        )
    for name in _os.listdir(ext_dir):
        if name.startswith("_core") and (name.endswith(".so") or name.endswith(".pyd")):
            spec = _ilu.spec_from_file_location(
                __name__ + "._core", _os.path.join(ext_dir, name)
            )
            module = _ilu.module_from_spec(spec)
            spec.loader.exec_module(module)
            _sys.modules[__name__ + "._core"] = module
            return module
    raise ImportError(f"no _core extension found in {ext_dir}")


_core = _load_core()

bessel_j0 = _core.bessel_j0
bessel_j1 = _core.bessel_j1
bessel_y0 = _core.bessel_y0
bessel_y1 = _core.bessel_y1
hankel1_0 = _core.hankel1_0
field_at = _core.field_at
measure = _core.measure
indicator_grid = _core.indicator_grid
localize = _core.localize
mae = _core.mae
prior_bound = _core.prior_bound
posterior_root = _core.posterior_root
densify = _core.densify
generate_dataset = _core.generate_dataset
train_model = _core.train_model
predict_dense = _core.predict_dense
model_info = _core.model_info
run_example_2_1 = _core.run_example_2_1
CANONICAL_SEED = _core.CANONICAL_SEED

__all__ = [
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "bessel_y1",
    "hankel1_0",
    "field_at",
    "measure",
    "indicator_grid",
    "localize",
    "mae",
    "prior_bound",
    "posterior_root",
    "densify",
    "generate_dataset",
    "train_model",
    "predict_dense",
    "model_info",
    "run_example_2_1",
    "CANONICAL_SEED",
]
