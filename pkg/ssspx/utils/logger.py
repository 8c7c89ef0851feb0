import logging
from ssspx.config import settings
level = settings.get('logging', {}).get('level', 'INFO')
logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO),
                    format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger('ssspx')
