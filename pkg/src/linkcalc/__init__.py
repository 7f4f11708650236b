"""Unlink recognition on link diagrams by Reidemeister search and twisting."""

__version__ = "0.1.0"

from .diagram import (  # noqa: E402
    Crossing,
    DiagramError,
    LinkDiagram,
    MultiplicityError,
    OrientationError,
    PDSyntaxError,
    PlanarityError,
    canonical_form,
    canonical_key,
    delete_component,
    faces,
    from_json,
    from_quads,
    is_homologically_trivial,
    linking_matrix,
    parse_pd,
    permute_components,
    to_json,
    to_pd,
    writhe,
)
from .moves import KINDS, MoveSpec, SiteMismatch, apply_move, enumerate_moves  # noqa: E402
from .search import (  # noqa: E402
    AnyComponentBundled,
    ComponentBundled,
    ComponentSelfCrossingFree,
    Crossingless,
    Found,
    Inconclusive,
    Nontrivial,
    NotFound,
    SearchBudget,
    Trivial,
    Witness,
    is_unknot,
    replay_certificate,
    search_reduce,
)
from .surgery import (  # noqa: E402
    INFINITY,
    STAR,
    OneOverQ,
    TwistSite,
    apply_slopes,
    detect_bundle,
    parse_slopes,
    predicted_linking_after_twist,
    twist,
)
from .classify import (  # noqa: E402
    ClassificationReport,
    classify_htb,
    is_trivial_link,
    verify_verdict,
)
from .corpus import CORPUS, corpus_load  # noqa: E402
