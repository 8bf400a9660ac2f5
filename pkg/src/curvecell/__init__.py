"""Space-filling curves and sphere cell ids built on the Hilbert correspondence."""
from .curve_core import (
    DyadicSquare,
    QuarticInterval,
    UnitPoint,
    interval_of,
    interval_parent,
    square_center,
    square_parent,
    squares_adjacent,
)
from .geocell import (
    CellId,
    FaceUV,
    LatLng,
    UnitVector,
    cell_area_steradians,
    cell_children,
    cell_parent,
    curve_position,
    decode_cell,
    encode_cell,
    latlng_to_vector,
    st_to_uv,
    uv_to_st,
    vector_to_face_uv,
)
from .hilbert import holder_sup, measure_of_image, phi, phi_inverse, point_at, trace
from .lebesgue import (
    CantorGap,
    TernaryExpansion,
    cantor_lebesgue,
    gap_of,
    lebesgue_extended,
    lebesgue_point,
    morton_decode,
    morton_encode,
)

__version__ = "0.1.0"
