"""Coherent-group analysis of rank data by taxicab correspondence analysis."""
from .coherence import (coherency_test, crossing_index, partition_by_first_axis,
                        theorem1_bounds)
from .config import PeelConfig
from .datasets import DatasetSpec, parse_dataset, parse_text, write_csv_borda
from .errors import *  # noqa: F401,F403
from .peeling import extract_coherent_group, group_summary, peel
from .ranks import (Preference, Profile, borda_scale, encode_profile,
                    first_order_marginals, reverse_and_nega)
from .report import build_bundle, render_report
from .shuffle import marginals_census_check, shuffle_census, shuffle_type
from .svgmap import map_coordinates, render_svg_map
from .synth import generate_synthetic
from .tca import (RestartPolicy, build_correspondence, deflate, factor_scores,
                  first_axis_ascent, first_axis_enumerate, reconstitute, residual,
                  run_tca)

__version__ = "0.1.0"
