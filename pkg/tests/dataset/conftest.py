from pytest import fixture

from deltanas.dataset.doa import DoADataset, generate_doa_dataset
from deltanas.oracle.proxy import NoisyProxy
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.space.spec import SearchSpaceSpec


@fixture(scope="package")
def proxy(landscape: SyntheticLandscape) -> NoisyProxy:
    return NoisyProxy(landscape, sigma=0.02, seed=1)


@fixture(scope="package")
def dataset(desk_spec: SearchSpaceSpec, proxy: NoisyProxy) -> DoADataset:
    return generate_doa_dataset(desk_spec, proxy, num_anchors=200, k=1, samples_per_encoding=4, seed=3)
