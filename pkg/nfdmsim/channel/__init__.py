from nfdmsim.channel.fiber import ChannelParams, check_guard, dbp, edc, linear_propagate, ssfm_propagate
from nfdmsim.channel.filters import ideal_lowpass
