"""Census of 3-manifolds obtained by gluing the faces of an octahedron in pairs."""

__version__ = "0.1.0"
