"""pfmat: exact matroid representation theory over partial fields."""

from pfmat.pfield import make_partial_field, PfError
