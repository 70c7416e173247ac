from mesh.errors import GenerationError, InvariantViolation, MeshStructureError, ReportSchemaError, TriangleFormatError
from mesh.storage import Layout, MeshStorage, build_mesh, convert_layout, init_flags
from mesh.triangle_io import (
    read_triangle_files,
    read_triangle_format,
    write_triangle_files,
    write_triangle_format,
)
