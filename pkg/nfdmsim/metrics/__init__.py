from nfdmsim.metrics.quality import count_bit_errors, fold_error_rate, qfactor_db2, rate_efficiency
from nfdmsim.metrics.records import (
    INVALID,
    OPTIMUM_COLUMNS,
    RECORD_COLUMNS,
    UNMEASURABLE,
    ErrorCounter,
    ExperimentRecord,
    optimum_frame,
    records_frame,
    write_records,
)
