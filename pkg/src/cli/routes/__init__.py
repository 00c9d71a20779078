from src.cli.router import CommandRouter
from src.cli.routes.defining_graph import router as defining_graph_router
from src.cli.routes.gbs import router as gbs_router
from src.cli.routes.tree import router as tree_router
from src.cli.routes.words import router as words_router

registry = CommandRouter()
registry.include_router(words_router)
registry.include_router(tree_router)
registry.include_router(gbs_router)
registry.include_router(defining_graph_router)
