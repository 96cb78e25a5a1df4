namespace Tiny
{
    public class Counter
    {
        public int Increment(int value)
        {
            return value + 1;
        }
    }
}
