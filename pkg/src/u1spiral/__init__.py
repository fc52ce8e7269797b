"""Spiral-deformation criterion for U(1)-like one-parameter groups."""

__version__ = "0.1.0"

from .classifier import (INCONCLUSIVE, MODES, NOT_U1_LIKE, U1_LIKE, ClassificationReport,
                         CriterionConfig, classify, membership_defect, render_report,
                         rederive_verdicts, spiral_sweep)
from .coordgroups import (BUILTINS, JacobianResult, TransformFamily, apply, eigenvalues,
                          generator_exp, jacobian, jacobian_det)
from .exceptions import DomainError, NumericError, RangeError
from .spiral import (CirclePoint, SpiralDeformation, SpiralPoint, circle_to_spiral, deform,
                     deformed_defect, is_infinitesimal_member, spiral_to_circle)
from .u1core import (GroupElement, adjoint, commutator, compose, jacobi_residual,
                     u1_element, unitarity_defect)
from .wrapdyn import (LiftedOrbit, Orbit, WrapMap, bernoulli_step, info_loss_bits,
                      lifted_orbit, orbit, preimage_count, recover_initial, wrap_step)

__all__ = [
    "INCONCLUSIVE",
    "MODES",
    "NOT_U1_LIKE",
    "U1_LIKE",
    "ClassificationReport",
    "CriterionConfig",
    "classify",
    "membership_defect",
    "render_report",
    "rederive_verdicts",
    "spiral_sweep",
    "BUILTINS",
    "JacobianResult",
    "TransformFamily",
    "apply",
    "eigenvalues",
    "generator_exp",
    "jacobian",
    "jacobian_det",
    "DomainError",
    "NumericError",
    "RangeError",
    "CirclePoint",
    "SpiralDeformation",
    "SpiralPoint",
    "circle_to_spiral",
    "deform",
    "deformed_defect",
    "is_infinitesimal_member",
    "spiral_to_circle",
    "GroupElement",
    "adjoint",
    "commutator",
    "compose",
    "jacobi_residual",
    "u1_element",
    "unitarity_defect",
    "LiftedOrbit",
    "Orbit",
    "WrapMap",
    "bernoulli_step",
    "info_loss_bits",
    "lifted_orbit",
    "orbit",
    "preimage_count",
    "recover_initial",
    "wrap_step",
]
