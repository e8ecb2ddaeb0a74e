from .aggregate import (COMPONENTWISE_MAX, MEAN, SUM, AggregationError, Aggregator, aggregate,
                        cap_multiset, max_k_sum)
from .model import (Cls, GnnClassifier, GnnError, Layer, apply_layer, classify, classify_all,
                    run, run_levels, validate_family)
from .serialize import FORMAT_VERSION, gnn_from_dict, gnn_to_dict, parse_gnn, serialize_gnn
from .spectrum import SpectrumReport, measure_spectrum, spectrum_bound
