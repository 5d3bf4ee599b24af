"""Bundled example projects and the image helpers that draw their looks."""
