"""Exact orbit decompositions of minimal parabolic subgroups on symmetric
k-varieties of SL(n), and the generalized complexification map."""

from .complexify import (ComplexificationReport, IPoset, OrbitDiagram, build_iposet, complexify,
                         expand_to_orbit_diagram, surjective_by_rank)
from .diagram import emit_diagram
from .errors import (BudgetExceeded, CriteriaDisagree, NotThetaStable, PreconditionError,
                     SpecParseError, SymkError, UnsupportedCombination)
from .field import (INFINITE, AlgClosedModel, ClassLabel, Finite, PadicModel, QuadExt, Rational,
                    RealModel)
from .group import (GroupElement, InvolutionSpec, NamedInvolution, apply_involution,
                    conjugate_involution, enumerate_group, is_fixed, tau)
from .orbits import OrbitCount, DoubleCosetTable, enumerate_double_cosets, orbit_count, vk_membership
from .roots import (Root, cayley_transform, flip_chain, is_theta_k_singular, root_type,
                    strongly_orthogonal, theta_on_root)
from .specs import parse_field, parse_group, parse_involution
from .tori import (Torus, TorusClass, TorusSignature, classify_torus_classes, decompose,
                   is_standard_pair, is_theta_k_split, is_theta_stable, rank_krank)
from .weyl import WeylQuotient, weyl_group, weyl_quotient


def is_square(x, k):
    return k.is_square(k(x) if not isinstance(x, tuple) else x)


def square_class(x, k):
    return k.square_class(k(x) if not isinstance(x, tuple) else x)


def square_class_group_order(k):
    return k.square_class_group_order()
