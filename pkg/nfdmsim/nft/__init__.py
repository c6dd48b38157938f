from nfdmsim.nft.spectrum import ContinuousSpectrum, LambdaGrid, NftGrid
from nfdmsim.nft.forward import fnft_continuous, zs_scatter
from nfdmsim.nft.backward import (
    GlmSolveCounter,
    GlmSolver,
    bnft_glm,
    bnft_windowed,
    glm_kernel,
    window_indices,
)
from nfdmsim.nft.nis import nis_decode, nis_encode, precompensate, propagate_spectrum
from nfdmsim.nft.transmitter import encode_burst, nfdm_transmit
