import logging
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from config import get_settings
from endpoints.reduce import router as reduce_router
from endpoints.solve import router as solve_router
from endpoints.verify import router as verify_router
from endpoints.problems import router as problems_router

settings = get_settings()

# Configure logging
logging.basicConfig(level=getattr(logging, settings.log_level, logging.INFO), format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

logger.info(f"PARAMLAT_DELTA: {settings.delta}")
logger.info(f"PARAMLAT_SAMPLES: {settings.samples}")
logger.info(f"PARAMLAT_MAX_RANK: {settings.max_rank}, PARAMLAT_ORACLE_MAX_RANK: {settings.oracle_max_rank}")

# Initialize FastAPI app
app = FastAPI(title="paramlat")

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(reduce_router, prefix="")
app.include_router(solve_router, prefix="")
app.include_router(verify_router, prefix="")
app.include_router(problems_router, prefix="")

# Health check endpoint
@app.get("/")
def health_check():
    """Health check endpoint to verify API is running."""
    return {"status": "API is working!"}
