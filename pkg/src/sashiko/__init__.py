"""Grid-based sashiko needlework patterns: generation and analysis.

Hitomezashi designs from binary phase words, their reverse-side duals,
loop/polyomino decomposition, symmetry detection, Fibonacci snowflakes,
counted-thread kogin/hishi charts, and deterministic SVG/ASCII chart
rendering.
"""

from .analysis import (
    CornerMap,
    Decomposition,
    Loop,
    Path,
    Polyomino,
    PLUS_PENTOMINO,
    StatsRecord,
    SymmetryReport,
    corner_map,
    decompose,
    detect_symmetry,
    polyomino_of,
    stats,
    transform_edges,
)
from .core import (
    Design,
    DesignSpec,
    DimensionError,
    Edge,
    PatternFormatError,
    SashikoError,
    StitchSet,
    back_of,
    build_design,
    design_count,
    format_pattern,
    parse_pattern,
    stitch_stage,
)
from .enumeration import (
    CapExceededError,
    CensusTable,
    census,
    enumerate_designs,
    find_designs_containing,
)
from .kogin import (
    ChartParseError,
    KoginChart,
    Run,
    UnknownMotifError,
    ValidationReport,
    emit_chart,
    motif,
    parse_chart,
    validate,
)
from .render import (
    RenderOptions,
    render_chart_svg,
    render_design_ascii,
    render_design_svg,
    render_snowflake_svg,
)
from .snowflake import (
    Snowflake,
    SnowflakeConstructionError,
    TurnWord,
    build_snowflake,
    is_snowflake,
    odd_fibonacci,
    turn_word,
)

__version__ = "0.1.0"
