"""Alias-free resampling filters, spectral measurements and diffusion samplers.

Images are float64 numpy arrays of shape (C, H, W); 2-D (H, W) input is read as
a single channel.
"""

from ._aliasfree import (
    CORPUS_SEEDS,
    DesignError,
    DomainError,
    GeometryError,
    ParseError,
    Schedule,
    ShapeError,
    alias_energy,
    apply_pointwise,
    band_limited_image,
    bessel_i0,
    bessel_j1,
    convolve2d,
    design_kernel,
    dft2,
    downsample2x_af,
    downsample2x_naive,
    equivariance_error,
    jinc,
    kaiser_weight,
    read_raster,
    rotate,
    run_pipeline,
    sample,
    training_loss,
    upsample2x_af,
    upsample2x_naive,
    wrapped_activation,
    write_raster,
)

__all__ = [name for name in dir() if not name.startswith("_")]
