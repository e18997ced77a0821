# Drinfeld center package initialization
from src.center.block_maps import coupon_basis, map_Y, map_Z, y_after_z_residual, z_membership_residual
from src.center.center import CenterObject, DrinfeldCenter, center_embed
from src.center.lfunctor import LFunctor
