"""Writers for JSON and DOT output"""
from pentaglobe.io.serialization import (to_json, write_json, fragment_from_dict,
                                         labeling_from_dict, read_json)
from pentaglobe.io.dot import family_graph_dot, write_dot
