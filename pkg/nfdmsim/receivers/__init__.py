from nfdmsim.receivers.detection import (
    DetectionResult,
    common_phase_correction,
    matched_filter_decide,
    matched_filter_outputs,
)
from nfdmsim.receivers.fnft_receiver import fnft_receiver
from nfdmsim.receivers.df_bnft import detection_window, df_bnft_receiver, trial_waveform
from nfdmsim.receivers.conventional import conventional_receiver
