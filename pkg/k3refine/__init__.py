from flask import Flask
from config import Config

from .models import OUTPUT_FORMATS


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)

    # Environment variables are always strings and may carry stray case or whitespace.
    # Normalise the output format and fall back to the pretty table for unknown values.
    output_format = app.config.get('OUTPUT_FORMAT')
    if isinstance(output_format, str):
        output_format = output_format.strip().lower()
    if output_format not in OUTPUT_FORMATS:
        app.logger.warning(
            f"Unknown output format '{app.config.get('OUTPUT_FORMAT')}' in K3REFINE_FORMAT, "
            f"using 'pretty'"
        )
        output_format = 'pretty'
    app.config['OUTPUT_FORMAT'] = output_format

    app.logger.setLevel(app.config.get('LOG_LEVEL', 'WARNING'))

    from .commands import cli_bp
    app.register_blueprint(cli_bp)

    return app
