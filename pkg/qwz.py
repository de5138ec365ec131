"""
q-WZ 검증 도구 실행 스크립트
사용 예: python qwz.py wz check --pair guo --nmax 10 --kmax 10
"""
import sys
from pathlib import Path

# 프로젝트 루트를 Python 패스에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
