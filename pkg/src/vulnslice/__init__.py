"""vulnslice: slice-based vulnerability candidate detection for a C subset.

Pipeline stages, each its own module:

- ``frontend``    lex + parse into tokens, statements, ASTs
- ``candidates``  syntax-based vulnerability candidates (SyVCs)
- ``graphs``      CFGs, dependence edges, PDGs, call graph
- ``slicing``     interprocedural slices and SeVC assembly
- ``vectorize``   symbolization and fixed-length encoding
- ``embeddings``  skip-gram / hashed token embeddings
- ``labeling``    ground-truth labels from diffs and annotations
- ``bgru``        bidirectional GRU classifier with explanations
- ``evaluation``  program-level splits and detection metrics
- ``cli``         the ``vulnslice`` command
"""

__version__ = "0.1.0"
