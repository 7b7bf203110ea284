"""Recover block-DCT DC coefficients from AC coefficients (USO baseline and FRM)."""
from .blockdct import (DcBounds, DcFreePlane, PixelRange, BlockGrid, apply_dc, block_dcs, dc_bounds,
                       finalize, forward_block, inverse_block, strip_dc)
from .frm import SearchConfig, SearchTrace, flow_rate, recover_frm, search_bracket, search_exhaustive
from .iqa import QualityReport, ms_ssim, psnr, quality, ssim
from .scan import Corner, FlowStats, Pattern, estimate_plane, predict_dc, scan_order
from .uso import global_adjustment, postprocess, recover_uso

__all__ = [
    "BlockGrid", "DcBounds", "DcFreePlane", "PixelRange", "apply_dc", "block_dcs", "dc_bounds",
    "finalize", "forward_block", "inverse_block", "strip_dc",
    "SearchConfig", "SearchTrace", "flow_rate", "recover_frm", "search_bracket", "search_exhaustive",
    "QualityReport", "ms_ssim", "psnr", "quality", "ssim",
    "Corner", "FlowStats", "Pattern", "estimate_plane", "predict_dc", "scan_order",
    "global_adjustment", "postprocess", "recover_uso",
]
__version__ = "0.1.0"
