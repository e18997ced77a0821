# Graphical calculus package initialization
from src.diagram.engine import Diagram
from src.diagram.morphism import Morphism
from src.diagram.objects import Obj, Word, dual_word, tensor_all
