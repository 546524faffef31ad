from flask.cli import FlaskGroup

from k3refine import create_app

# Command-line entry point: `python run.py hilb --dmax 3`, `python run.py verify`, ...
# The commands come from the blueprint registered in create_app; Flask's own
# run/shell/routes commands and .env loading are switched off.
cli = FlaskGroup(
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    load_dotenv=False,
    help='Refined sheaf-counting invariants of local K3 surfaces.',
)

if __name__ == '__main__':
    cli()
