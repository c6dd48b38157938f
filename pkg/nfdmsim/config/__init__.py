from nfdmsim.config.config import (
    RECEIVERS,
    apply_overrides,
    load_system_config,
    read_config,
    validate_sweep,
)
from nfdmsim.config.logging_config import configure_logging, configure_worker_logging, set_log_context
