"""Module constructions, Jordan type analysis, bundles and module file I/O."""
