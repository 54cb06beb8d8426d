"""Class numbers of indefinite binary quadratic forms ordered by fundamental unit."""

from ._pellclass import (
    A0,
    C,
    ContractError,
    DomainError,
    EnumerationRun,
    GuardError,
    H,
    IntegrityError,
    InvariantError,
    ParseError,
    charsum,
    charsum_verify,
    class_number,
    enumerate,
    extremes,
    from_cache,
    gk,
    kronecker,
    l_smoothed,
    li,
    local_H,
    log_H,
    log_H_asymptotic,
    main_term,
    moment,
    predicted_tail,
    reduced_forms,
    tail,
    twisted_predicted,
    twisted_sum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
