from ._core import (
    Boundary,
    Error,
    Reaction,
    acceptance,
    critical_slope,
    experiments,
    export_run,
    extinction,
    halfline_steady_state,
    halfplane_wave,
    length_map,
    minimal_speed,
    run_config,
    run_config_file,
    set_threads,
    speed_study,
    strip_steady_states,
    strip_wave,
    threads,
    validate,
    vartheta,
    wave_profile,
    wave_speed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
