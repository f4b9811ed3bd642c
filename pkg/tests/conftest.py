import sys
import os


BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(BASE_DIR)

root_dir_content = os.listdir(BASE_DIR)
PROJECT_DIR_NAME = 'dobinski_lab'

if (
        PROJECT_DIR_NAME not in root_dir_content
        or not os.path.isdir(os.path.join(BASE_DIR, PROJECT_DIR_NAME))
):
    assert False, (
        f'Directory `{BASE_DIR}` has no `{PROJECT_DIR_NAME}` project folder. '
        'Make sure the project layout is intact.'
    )

MANAGE_PATH = os.path.join(BASE_DIR, PROJECT_DIR_NAME)
project_dir_content = os.listdir(MANAGE_PATH)
FILENAME = 'manage.py'

if FILENAME not in project_dir_content:
    assert False, (
        f'Directory `{MANAGE_PATH}` has no `{FILENAME}` file. '
        'Make sure the project layout is intact.'
    )

pytest_plugins = [
    'tests.fixtures.fixture_programs',
    'tests.fixtures.fixture_families',
    'tests.fixtures.fixture_willow',
]

filename = 'README.md'
assert filename in root_dir_content, (
    f'The project root has no `{filename}` file.'
)

with open(os.path.join(BASE_DIR, filename), 'r', errors='ignore') as f:
    file = f.read()
    assert file.strip(), (
        f'`{filename}` must describe the project.'
    )
