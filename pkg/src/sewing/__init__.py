# Sewing constraints package initialization
from src.sewing.correlators import CorrelatorSet, GeneratorTag, canonical_correlators, inflate, load_correlators
from src.sewing.dimensions import stringnet_dim, stringnet_dim_bruteforce
from src.sewing.extraction import Retract, extract_cardy, split_center_idempotent, split_idempotent
from src.sewing.gluing import GluingSpec, glue_correlators, z_gluing_residual
from src.sewing.relations import RELATION_NOTES, RelationContext, RelationResult, check_all, check_relation
