"""Exact dimensions of spaces and newspaces of modular cusp forms with
nebentypus, with exhaustive classification of the small ones."""

from .arith import (
    congruence_roots,
    euler_phi,
    factorize,
    gcd_phi_sum,
    mobius,
    nu,
    omega,
    psi,
    spf_sieve,
    sqrt_mod_prime_power,
    two_pow_omega,
)
from .characters import (
    DirichletCharacter,
    LocalCharacter,
    RootOfUnity,
    enumerate_characters,
    evaluate,
    from_conrey,
    lift_hat,
    primitive_characters,
)
from .classify import (
    BoundSpec,
    ClassificationReport,
    SieveResult,
    classify,
    equidistribution_check,
    is_infinite_family,
    k_cutoff,
    martin_sieve,
    threshold,
)
from .dimfull import (
    FullDimTerms,
    dim_full,
    dim_full_total,
    rho,
    rho_bruteforce,
    rho_prime,
    rho_prime_bruteforce,
    sigma_mult,
)
from .dimnew import (
    NewDimTerms,
    beta,
    beta_convolve,
    dim_new_convolution,
    dim_new_explicit,
    dim_new_total,
    oldspace_reconstruct,
    partial_convolution,
    theta_f,
)
from .tables import load_fixture, verify_tables

__version__ = "0.1.0"
