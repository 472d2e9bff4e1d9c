"""Continual image-captioning toolkit: task streams, multi-loss training,
caption generation, metrics, and forgetting analysis."""

__version__ = "0.1.0"
