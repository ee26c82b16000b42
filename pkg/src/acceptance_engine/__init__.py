"""Scenario engine for a 6-input / 10-hidden / 1-output ReLU network that
scores acceptance of the 2024 Mexican judicial reform.

Subpackages: core_net (forward pass and gradients), training (from-scratch
Adam), paper_model (published parameter fixture), scenario (what-if
services), model_io (file formats), cli and server (interfaces).
"""
__version__ = "0.1.0"

ENGINE_VERSION = __version__
